// SPDX-License-Identifier: Apache-2.0
//
// rfso - mixed RF/FSO relay-link performance library
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "rfso/config_io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rfso/errors.hpp"

namespace rfso
{
namespace
{

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string &msg) { raise(errc::config_error, msg); }

// Every key of `obj` must appear in `allowed`; `where` is the dotted path
// prefix used in diagnostics ("" for the document root).
void reject_unknown_keys(const ordered_json &obj, const std::string &where,
                         std::initializer_list<const char *> allowed)
{
    for (auto it = obj.begin(); it != obj.end(); ++it)
    {
        bool known = false;
        for (const char *k : allowed)
            if (it.key() == k)
            {
                known = true;
                break;
            }
        if (!known)
            fail("unknown key \"" + where + it.key() + "\"");
    }
}

const ordered_json &need(const ordered_json &obj, const std::string &where,
                         const char *key)
{
    auto it = obj.find(key);
    if (it == obj.end())
        fail("missing required field \"" + where + key + "\"");
    return *it;
}

double need_number(const ordered_json &obj, const std::string &where, const char *key)
{
    const ordered_json &v = need(obj, where, key);
    if (!v.is_number())
        fail("field \"" + where + key + "\" must be a number");
    return v.get<double>();
}

double opt_number(const ordered_json &obj, const std::string &where, const char *key,
                  double fallback)
{
    auto it = obj.find(key);
    if (it == obj.end())
        return fallback;
    if (!it->is_number())
        fail("field \"" + where + key + "\" must be a number");
    return it->get<double>();
}

int need_int(const ordered_json &obj, const std::string &where, const char *key)
{
    const ordered_json &v = need(obj, where, key);
    if (v.is_number_integer())
        return v.get<int>();
    if (v.is_number_float())
    {
        double d = v.get<double>();
        if (d == std::floor(d) && std::abs(d) < 1e9)
            return static_cast<int>(d);
    }
    fail("field \"" + where + key + "\" must be an integer");
}

bool opt_bool(const ordered_json &obj, const std::string &where, const char *key,
              bool fallback)
{
    auto it = obj.find(key);
    if (it == obj.end())
        return fallback;
    if (!it->is_boolean())
        fail("field \"" + where + key + "\" must be a boolean");
    return it->get<bool>();
}

// Focal length accepts the literal string "inf" (collimated beam) or a
// positive number of meters.
double parse_focal(const ordered_json &obj, const std::string &where, const char *key)
{
    auto it = obj.find(key);
    if (it == obj.end())
        return std::numeric_limits<double>::infinity();
    if (it->is_string())
    {
        std::string s = it->get<std::string>();
        if (s == "inf" || s == "Inf" || s == "INF")
            return std::numeric_limits<double>::infinity();
        fail("field \"" + where + key + "\" must be a number or \"inf\"");
    }
    if (!it->is_number())
        fail("field \"" + where + key + "\" must be a number or \"inf\"");
    return it->get<double>();
}

analytics::ModulationScheme parse_modulation(const ordered_json &root)
{
    auto it = root.find("modulation");
    if (it == root.end())
        return analytics::ModulationScheme::bpsk();
    if (!it->is_string())
        fail("field \"modulation\" must be a string");
    std::string s = it->get<std::string>();
    if (s == "bpsk")
        return analytics::ModulationScheme::bpsk();
    if (s == "dbpsk")
        return analytics::ModulationScheme::dbpsk();
    fail("field \"modulation\" must be \"bpsk\" or \"dbpsk\", got \"" + s + "\"");
}

channel::LinkBudget parse_budget(const ordered_json &obj)
{
    const std::string where = "link_budget.";
    reject_unknown_keys(obj, where,
                        {"Ps_W", "sigma2_SR_W", "sigma2_RD_W", "Pt_W", "eta",
                         "m_index", "G2"});
    channel::LinkBudget b;
    b.Ps = need_number(obj, where, "Ps_W");
    b.sigma2_SR = need_number(obj, where, "sigma2_SR_W");
    b.sigma2_RD = need_number(obj, where, "sigma2_RD_W");
    b.Pt = need_number(obj, where, "Pt_W");
    b.eta = need_number(obj, where, "eta");
    b.m_index = opt_number(obj, where, "m_index", 1.0);
    b.G2 = opt_number(obj, where, "G2", 0.0);
    return b;
}

} // namespace

channel::DerivedFsoParams ChannelConfig::derive_and_check() const
{
    rf.validate();
    fso.validate();
    channel::DerivedFsoParams params = channel::derive_fso(fso);
    if (budget)
    {
        channel::LinkBudget b = *budget;
        if (!(b.Re_const > 0.0))
            b.Re_const = channel::re_constant(rf);
        channel::check_link_budget(b, rf, fso, params);
    }
    return params;
}

analytics::FsoLink ChannelConfig::fso_link() const
{
    return analytics::FsoLink{derive_and_check(), fso.mu2};
}

ChannelConfig default_config()
{
    ChannelConfig cfg;
    cfg.rf = channel::RfConfig::from_dB(2, 2, 0.72, 20.0);
    cfg.fso = channel::FsoConfig::from_dB(20.0);
    cfg.mod = analytics::ModulationScheme::bpsk();
    cfg.gamma_th_dB = 0.0;
    cfg.gamma_th = 1.0;
    cfg.bandwidth = 1.0;
    cfg.shannon = false;
    return cfg;
}

ChannelConfig config_from_json_text(const std::string &text)
{
    ordered_json root;
    try
    {
        root = ordered_json::parse(text);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        fail(std::string("not valid JSON: ") + e.what());
    }
    if (!root.is_object())
        fail("top level must be a JSON object");
    reject_unknown_keys(root, "",
                        {"rf", "fso", "modulation", "gamma_th_dB", "capacity",
                         "link_budget"});

    ChannelConfig cfg;

    const ordered_json &rf = need(root, "", "rf");
    if (!rf.is_object())
        fail("field \"rf\" must be an object");
    reject_unknown_keys(rf, "rf.", {"M", "l", "rho", "mu1_dB"});
    // The channel constructors validate eagerly; recast their range
    // complaints as config errors so the caller maps them to exit code 2.
    try
    {
        cfg.rf = channel::RfConfig::from_dB(need_int(rf, "rf.", "M"),
                                            need_int(rf, "rf.", "l"),
                                            need_number(rf, "rf.", "rho"),
                                            need_number(rf, "rf.", "mu1_dB"));
    }
    catch (const Error &e)
    {
        if (e.code() == errc::config_error)
            throw;
        fail(e.what());
    }

    const ordered_json &fso = need(root, "", "fso");
    if (!fso.is_object())
        fail("field \"fso\" must be an object");
    reject_unknown_keys(fso, "fso.",
                        {"d_m", "Cn2", "lambda_m", "a_m", "a0_m", "F0_m",
                         "sigma_s_m", "mu2_dB", "path_loss"});
    try
    {
        cfg.fso =
            channel::FsoConfig::from_dB(need_number(fso, "fso.", "mu2_dB"));
    }
    catch (const Error &e)
    {
        if (e.code() == errc::config_error)
            throw;
        fail(e.what());
    }
    cfg.fso.d = need_number(fso, "fso.", "d_m");
    cfg.fso.Cn2 = need_number(fso, "fso.", "Cn2");
    cfg.fso.lambda = need_number(fso, "fso.", "lambda_m");
    cfg.fso.a = need_number(fso, "fso.", "a_m");
    cfg.fso.a0 = need_number(fso, "fso.", "a0_m");
    cfg.fso.F0 = parse_focal(fso, "fso.", "F0_m");
    cfg.fso.sigma_s = need_number(fso, "fso.", "sigma_s_m");
    cfg.fso.path_loss = opt_number(fso, "fso.", "path_loss", 1.0);

    cfg.mod = parse_modulation(root);
    cfg.gamma_th_dB = opt_number(root, "", "gamma_th_dB", 0.0);
    cfg.gamma_th = channel::db_to_linear(cfg.gamma_th_dB);

    if (auto it = root.find("capacity"); it != root.end())
    {
        if (!it->is_object())
            fail("field \"capacity\" must be an object");
        reject_unknown_keys(*it, "capacity.", {"bandwidth_Hz", "shannon"});
        cfg.bandwidth = opt_number(*it, "capacity.", "bandwidth_Hz", 1.0);
        if (!(cfg.bandwidth > 0.0))
            fail("field \"capacity.bandwidth_Hz\" must be positive");
        cfg.shannon = opt_bool(*it, "capacity.", "shannon", false);
    }

    if (auto it = root.find("link_budget"); it != root.end())
    {
        if (!it->is_object())
            fail("field \"link_budget\" must be an object");
        cfg.budget = parse_budget(*it);
    }

    // Range checks live with the channel model; surface them as config
    // errors so the caller maps them to the config exit code.
    try
    {
        cfg.rf.validate();
        cfg.fso.validate();
    }
    catch (const Error &e)
    {
        fail(e.what());
    }
    return cfg;
}

ChannelConfig load_config(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail("cannot open config file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

std::string config_to_json_text(const ChannelConfig &cfg, int indent)
{
    ordered_json root;
    root["rf"] = {{"M", cfg.rf.M},
                  {"l", cfg.rf.l},
                  {"rho", cfg.rf.rho},
                  {"mu1_dB", cfg.rf.mu1_dB}};
    ordered_json fso = {{"d_m", cfg.fso.d},
                        {"Cn2", cfg.fso.Cn2},
                        {"lambda_m", cfg.fso.lambda},
                        {"a_m", cfg.fso.a},
                        {"a0_m", cfg.fso.a0}};
    if (std::isinf(cfg.fso.F0))
        fso["F0_m"] = "inf";
    else
        fso["F0_m"] = cfg.fso.F0;
    fso["sigma_s_m"] = cfg.fso.sigma_s;
    fso["mu2_dB"] = cfg.fso.mu2_dB;
    fso["path_loss"] = cfg.fso.path_loss;
    root["fso"] = std::move(fso);
    root["modulation"] =
        cfg.mod.name == analytics::Modulation::bpsk ? "bpsk" : "dbpsk";
    root["gamma_th_dB"] = cfg.gamma_th_dB;
    root["capacity"] = {{"bandwidth_Hz", cfg.bandwidth}, {"shannon", cfg.shannon}};
    if (cfg.budget)
    {
        ordered_json b = {{"Ps_W", cfg.budget->Ps},
                          {"sigma2_SR_W", cfg.budget->sigma2_SR},
                          {"sigma2_RD_W", cfg.budget->sigma2_RD},
                          {"Pt_W", cfg.budget->Pt},
                          {"eta", cfg.budget->eta}};
        if (cfg.budget->m_index != 1.0)
            b["m_index"] = cfg.budget->m_index;
        if (cfg.budget->G2 > 0.0)
            b["G2"] = cfg.budget->G2;
        root["link_budget"] = std::move(b);
    }
    return root.dump(indent) + "\n";
}

void save_config(const ChannelConfig &cfg, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail("cannot open \"" + path + "\" for writing");
    out << config_to_json_text(cfg);
    if (!out)
        fail("short write to \"" + path + "\"");
}

} // namespace rfso
