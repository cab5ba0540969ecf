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
//
// Command-line front end: config ingestion, sweep execution, plot-ready
// CSV/JSON emission, and direct access to the special-function evaluators.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rfso/analytics.hpp"
#include "rfso/channel.hpp"
#include "rfso/config_io.hpp"
#include "rfso/errors.hpp"
#include "rfso/log.hpp"
#include "rfso/mc.hpp"
#include "rfso/specfun.hpp"
#include "rfso/validation.hpp"

namespace
{

using nlohmann::ordered_json;
using namespace rfso;

std::string g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void cfg_fail(const std::string &msg)
{
    raise(errc::config_error, msg);
}

// ------------------------------------------------------------ run config

// A run file is the channel schema plus two optional driver blocks.  The
// blocks are split off here; the remainder must satisfy the strict channel
// parser, so unknown keys still fail loudly.
struct LoadedRun
{
    ChannelConfig channel{};
    std::optional<validation::SweepSpec> sweep{};
    mc::SimPlan plan{};
    bool seed_given = false;
};

const ordered_json &block_need(const ordered_json &obj, const std::string &where,
                               const char *key)
{
    auto it = obj.find(key);
    if (it == obj.end())
        cfg_fail("missing required field \"" + where + key + "\"");
    return *it;
}

double block_number(const ordered_json &obj, const std::string &where,
                    const char *key)
{
    const ordered_json &v = block_need(obj, where, key);
    if (!v.is_number())
        cfg_fail("field \"" + where + key + "\" must be a number");
    return v.get<double>();
}

validation::SweepVariable sweep_variable_from_name(const std::string &s)
{
    using V = validation::SweepVariable;
    if (s == "mu1_dB")
        return V::mu1_dB;
    if (s == "mu2_dB")
        return V::mu2_dB;
    if (s == "mu_joint_dB")
        return V::mu_joint_dB;
    if (s == "sigma_s")
        return V::sigma_s;
    if (s == "rho")
        return V::rho;
    if (s == "M")
        return V::M_count;
    cfg_fail("field \"sweep.variable\" must be one of mu1_dB, mu2_dB, "
             "mu_joint_dB, sigma_s, rho, M; got \"" + s + "\"");
}

analytics::Metric metric_from_name(const std::string &s)
{
    if (s == "cdf")
        return analytics::Metric::cdf;
    if (s == "ber")
        return analytics::Metric::ber;
    if (s == "capacity")
        return analytics::Metric::capacity;
    cfg_fail("metric must be one of cdf, ber, capacity; got \"" + s + "\"");
}

validation::SweepSpec parse_sweep_block(const ordered_json &j,
                                        const ChannelConfig &channel)
{
    if (!j.is_object())
        cfg_fail("field \"sweep\" must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string &k = it.key();
        if (k != "variable" && k != "start" && k != "stop" && k != "step" &&
            k != "metrics" && k != "compare")
            cfg_fail("unknown key \"sweep." + k + "\"");
    }
    validation::SweepSpec spec;
    spec.fixed = channel;
    const ordered_json &var = block_need(j, "sweep.", "variable");
    if (!var.is_string())
        cfg_fail("field \"sweep.variable\" must be a string");
    spec.variable = sweep_variable_from_name(var.get<std::string>());
    spec.start = block_number(j, "sweep.", "start");
    spec.stop = block_number(j, "sweep.", "stop");
    spec.step = block_number(j, "sweep.", "step");
    if (auto it = j.find("metrics"); it != j.end())
    {
        if (!it->is_array() || it->empty())
            cfg_fail("field \"sweep.metrics\" must be a non-empty array");
        spec.metrics.clear();
        for (const ordered_json &m : *it)
        {
            if (!m.is_string())
                cfg_fail("entries of \"sweep.metrics\" must be strings");
            spec.metrics.push_back(metric_from_name(m.get<std::string>()));
        }
    }
    if (auto it = j.find("compare"); it != j.end())
    {
        if (!it->is_string())
            cfg_fail("field \"sweep.compare\" must be a string");
        const std::string s = it->get<std::string>();
        if (s == "analytic")
            spec.compare = validation::CompareMode::analytic;
        else if (s == "mc")
            spec.compare = validation::CompareMode::mc;
        else if (s == "both")
            spec.compare = validation::CompareMode::both;
        else
            cfg_fail("field \"sweep.compare\" must be analytic, mc or both");
    }
    return spec;
}

void parse_sim_block(const ordered_json &j, LoadedRun &run)
{
    if (!j.is_object())
        cfg_fail("field \"sim\" must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        const std::string &k = it.key();
        if (k != "samples" && k != "seed" && k != "streams")
            cfg_fail("unknown key \"sim." + k + "\"");
    }
    if (auto it = j.find("samples"); it != j.end())
    {
        if (!it->is_number_unsigned() && !it->is_number_integer())
            cfg_fail("field \"sim.samples\" must be a positive integer");
        run.plan.samples = it->get<std::uint64_t>();
    }
    if (auto it = j.find("seed"); it != j.end())
    {
        if (!it->is_number_unsigned() && !it->is_number_integer())
            cfg_fail("field \"sim.seed\" must be a non-negative integer");
        run.plan.seed = it->get<std::uint64_t>();
        run.seed_given = true;
    }
    if (auto it = j.find("streams"); it != j.end())
    {
        if (!it->is_number_integer() && !it->is_number_unsigned())
            cfg_fail("field \"sim.streams\" must be an integer");
        run.plan.streams = it->get<int>();
    }
}

LoadedRun load_run(const std::string &path)
{
    LoadedRun run;
    if (path.empty())
    {
        run.channel = default_config();
        return run;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        cfg_fail("cannot open config file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    ordered_json root;
    try
    {
        root = ordered_json::parse(buf.str());
    }
    catch (const nlohmann::json::parse_error &e)
    {
        cfg_fail(std::string("not valid JSON: ") + e.what());
    }
    if (!root.is_object())
        cfg_fail("top level must be a JSON object");

    ordered_json sweep_block, sim_block;
    if (auto it = root.find("sweep"); it != root.end())
    {
        sweep_block = *it;
        root.erase("sweep");
    }
    if (auto it = root.find("sim"); it != root.end())
    {
        sim_block = *it;
        root.erase("sim");
    }
    run.channel = config_from_json_text(root.dump());
    if (!sweep_block.is_null())
        run.sweep = parse_sweep_block(sweep_block, run.channel);
    if (!sim_block.is_null())
        parse_sim_block(sim_block, run);
    return run;
}

// Threshold strings accept a plain number of dB or a trailing "dB" unit.
double parse_gamma_th_db(const std::string &arg)
{
    std::string s = arg;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start])))
        ++start;
    s = s.substr(start);
    if (s.size() >= 2)
    {
        const char a = static_cast<char>(std::tolower(s[s.size() - 2]));
        const char b = static_cast<char>(std::tolower(s[s.size() - 1]));
        if (a == 'd' && b == 'b')
            s = s.substr(0, s.size() - 2);
    }
    try
    {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size())
            cfg_fail("cannot parse --gamma-th value \"" + arg + "\"");
        return v;
    }
    catch (const std::logic_error &)
    {
        cfg_fail("cannot parse --gamma-th value \"" + arg + "\"");
    }
}

std::uint64_t fresh_seed()
{
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// --------------------------------------------------------------- output

struct OutRow
{
    double x = 0.0;
    std::string metric;
    std::string method;
    double value = 0.0;
    std::optional<double> std_err{};
    std::optional<std::uint64_t> n{};
    std::optional<std::uint64_t> seed{};
};

std::string compact_config(const ChannelConfig &cfg)
{
    std::string s = config_to_json_text(cfg, -1);
    while (!s.empty() && s.back() == '\n')
        s.pop_back();
    return s;
}

void write_csv(std::ostream &os, const std::vector<std::string> &comments,
               const std::vector<OutRow> &rows)
{
    for (const std::string &c : comments)
        os << "# " << c << "\n";
    os << "x,metric,method,value,std_err,n,seed\n";
    for (const OutRow &r : rows)
    {
        os << g17(r.x) << ',' << r.metric << ',' << r.method << ','
           << g17(r.value) << ',';
        if (r.std_err)
            os << g17(*r.std_err);
        os << ',';
        if (r.n)
            os << *r.n;
        os << ',';
        if (r.seed)
            os << *r.seed;
        os << "\n";
    }
}

ordered_json rows_to_json(const std::vector<OutRow> &rows)
{
    ordered_json arr = ordered_json::array();
    for (const OutRow &r : rows)
    {
        ordered_json o;
        o["x"] = r.x;
        o["metric"] = r.metric;
        o["method"] = r.method;
        o["value"] = r.value;
        if (r.std_err)
            o["std_err"] = *r.std_err;
        else
            o["std_err"] = nullptr;
        if (r.n)
            o["n"] = *r.n;
        else
            o["n"] = nullptr;
        if (r.seed)
            o["seed"] = *r.seed;
        else
            o["seed"] = nullptr;
        arr.push_back(std::move(o));
    }
    return arr;
}

void emit(const std::string &path, const std::string &format,
          const std::vector<std::string> &comments, const ordered_json &doc,
          const std::vector<OutRow> &rows)
{
    const auto write = [&](std::ostream &os) {
        if (format == "json")
            os << doc.dump(2) << "\n";
        else
            write_csv(os, comments, rows);
    };
    if (path.empty())
    {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        cfg_fail("cannot open output file \"" + path + "\"");
    write(out);
    out.flush();
    if (!out)
        cfg_fail("short write to \"" + path + "\"");
}

// ------------------------------------------------------------- commands

struct Options
{
    std::string config_path;
    std::string output_path;
    std::string format = "csv";
    std::string gamma_th;
    std::uint64_t samples = 0;
    bool samples_set = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned threads = 0;
    std::vector<std::string> suites;
    double z_tol = 3.0;
};

void apply_gamma_override(ChannelConfig &cfg, const Options &opt)
{
    if (opt.gamma_th.empty())
        return;
    cfg.gamma_th_dB = parse_gamma_th_db(opt.gamma_th);
    cfg.gamma_th = channel::db_to_linear(cfg.gamma_th_dB);
}

validation::SweepSpec effective_sweep(const LoadedRun &run)
{
    if (run.sweep)
    {
        validation::SweepSpec spec = *run.sweep;
        spec.fixed = run.channel;
        return spec;
    }
    validation::SweepSpec spec;
    spec.fixed = run.channel;
    return spec;
}

std::string sweep_comment(const validation::SweepSpec &spec)
{
    return std::string("sweep=") + validation::sweep_variable_name(spec.variable) +
           ":" + g17(spec.start) + ":" + g17(spec.stop) + ":" + g17(spec.step);
}

// Shared by analyze and simulate; `mc_rows` selects which side of the
// report lands in the value column.
int run_sweep_command(const Options &opt, bool mc_rows)
{
    LoadedRun run = load_run(opt.config_path);
    apply_gamma_override(run.channel, opt);
    validation::SweepSpec spec = effective_sweep(run);

    if (mc_rows)
    {
        if (opt.samples_set)
            run.plan.samples = opt.samples;
        if (opt.seed_set)
        {
            run.plan.seed = opt.seed;
            run.seed_given = true;
        }
        if (!run.seed_given)
        {
            run.plan.seed = fresh_seed();
            log::info("generated seed " + std::to_string(run.plan.seed));
        }
        if (run.plan.samples < 10000)
            cfg_fail("simulate requires at least 10000 samples");
        run.plan.threads = opt.threads;
        if (spec.compare != validation::CompareMode::both)
            spec.compare = validation::CompareMode::mc;
    }
    else
    {
        spec.compare = validation::CompareMode::analytic;
    }
    spec.validate();
    run.plan.validate();

    const validation::ComparisonReport rep =
        validation::run_sweep(spec, run.plan);

    std::vector<OutRow> rows;
    std::vector<std::string> failures;
    for (const validation::ReportRow &r : rep.rows)
    {
        if (r.name.rfind("error:", 0) == 0)
        {
            failures.push_back("x=" + g17(r.x) + ": " + r.note);
            continue;
        }
        if (!mc_rows || spec.compare == validation::CompareMode::both)
        {
            OutRow row;
            row.x = r.x;
            row.metric = r.name;
            row.method = "analytic";
            row.value = r.analytic;
            rows.push_back(std::move(row));
        }
        if (mc_rows && r.has_mc)
        {
            OutRow row;
            row.x = r.x;
            row.metric = r.name;
            row.method = "mc";
            row.value = r.mc_mean;
            row.std_err = r.mc_stderr;
            row.n = r.n;
            row.seed = r.seed;
            rows.push_back(std::move(row));
        }
    }

    const std::string command = mc_rows ? "simulate" : "analyze";
    std::vector<std::string> comments{"rfso " + command,
                                      "config=" + compact_config(run.channel),
                                      sweep_comment(spec),
                                      "gamma_th_dB=" + g17(run.channel.gamma_th_dB)};
    ordered_json doc;
    doc["command"] = command;
    doc["config"] = ordered_json::parse(config_to_json_text(run.channel));
    doc["sweep"] = {{"variable", validation::sweep_variable_name(spec.variable)},
                    {"start", spec.start},
                    {"stop", spec.stop},
                    {"step", spec.step}};
    if (mc_rows)
    {
        comments.push_back("samples=" + std::to_string(run.plan.samples));
        comments.push_back("seed=" + std::to_string(run.plan.seed));
        comments.push_back("streams=" + std::to_string(run.plan.streams));
        doc["samples"] = run.plan.samples;
        doc["seed"] = run.plan.seed;
        doc["streams"] = run.plan.streams;
    }
    doc["rows"] = rows_to_json(rows);

    emit(opt.output_path, opt.format, comments, doc, rows);
    if (!failures.empty())
    {
        for (const std::string &f : failures)
            log::error("evaluation failed at " + f);
        return 3;
    }
    return 0;
}

int cmd_validate(const Options &opt)
{
    LoadedRun run = load_run(opt.config_path);
    apply_gamma_override(run.channel, opt);
    if (opt.samples_set)
        run.plan.samples = opt.samples;
    if (opt.seed_set)
    {
        run.plan.seed = opt.seed;
        run.seed_given = true;
    }
    // validate is a regression gate, so its default report must be
    // reproducible run to run; --seed re-draws it.
    if (!run.seed_given)
        run.plan.seed = 20240817;
    if (run.plan.samples == 0)
        cfg_fail("validate requires a positive sample count");
    std::set<std::string> suites(opt.suites.begin(), opt.suites.end());

    const validation::ComparisonReport rep = validation::run_default_validation(
        run.channel, run.plan, suites, opt.z_tol);

    std::vector<OutRow> rows;
    std::vector<std::string> fail_notes;
    for (const validation::ReportRow &r : rep.rows)
    {
        OutRow row;
        row.x = r.x;
        row.metric = r.suite + ":" + r.name;
        row.method = r.has_mc ? "mc" : "analytic";
        row.value = r.has_mc ? r.mc_mean : r.analytic;
        if (r.has_mc)
        {
            row.std_err = r.mc_stderr;
            row.n = r.n;
            row.seed = r.seed;
        }
        rows.push_back(std::move(row));
        if (!r.pass)
            fail_notes.push_back("FAIL " + r.suite + ":" + r.name + " x=" +
                                 g17(r.x) + " " + r.note);
    }

    std::vector<std::string> comments{
        "rfso validate",
        "config=" + compact_config(run.channel),
        "description=" + rep.description,
        "samples=" + std::to_string(run.plan.samples),
        "seed=" + std::to_string(run.plan.seed),
        "z_tol=" + g17(opt.z_tol),
        "all_pass=" + std::string(rep.all_pass ? "true" : "false"),
        "max_abs_z=" + g17(rep.max_abs_z),
        "max_rel_gap=" + g17(rep.max_rel_gap)};
    for (const std::string &f : fail_notes)
        comments.push_back(f);

    ordered_json doc;
    doc["command"] = "validate";
    doc["config"] = ordered_json::parse(config_to_json_text(run.channel));
    doc["samples"] = run.plan.samples;
    doc["seed"] = run.plan.seed;
    doc["z_tol"] = opt.z_tol;
    doc["summary"] = {{"description", rep.description},
                      {"all_pass", rep.all_pass},
                      {"max_abs_z", rep.max_abs_z},
                      {"max_rel_gap", rep.max_rel_gap}};
    ordered_json arr = ordered_json::array();
    for (const validation::ReportRow &r : rep.rows)
    {
        ordered_json o;
        o["suite"] = r.suite;
        o["name"] = r.name;
        o["x"] = r.x;
        o["analytic"] = r.analytic;
        if (r.has_mc)
        {
            o["mc_mean"] = r.mc_mean;
            o["mc_stderr"] = r.mc_stderr;
            o["z"] = r.z;
            o["n"] = r.n;
            o["seed"] = r.seed;
        }
        o["rel_gap"] = r.rel_gap;
        o["tolerance"] = r.tolerance;
        o["pass"] = r.pass;
        o["note"] = r.note;
        arr.push_back(std::move(o));
    }
    doc["rows"] = std::move(arr);

    emit(opt.output_path, opt.format, comments, doc, rows);
    for (const std::string &f : fail_notes)
        log::warn(f);
    return rep.all_pass ? 0 : 1;
}

struct SpecfunArgs
{
    std::string kind;
    std::vector<int> orders;
    std::vector<double> a;
    std::vector<double> b;
    double z = 1.0;
    double A = 1.0;
    double B = 1.0;
    double r = 1.0;
    double target = 1e-8;
    double abscissa = 0.0;
    bool abscissa_set = false;
};

int cmd_specfun(const SpecfunArgs &args)
{
    if (args.kind == "meijerg")
    {
        if (args.orders.size() != 4)
            cfg_fail("meijerg needs four positional orders: m n p q");
        specfun::MeijerGSpec spec;
        spec.m = args.orders[0];
        spec.n = args.orders[1];
        spec.p = args.orders[2];
        spec.q = args.orders[3];
        spec.a = args.a;
        spec.b = args.b;
        spec.z = args.z;
        specfun::ContourConfig cc;
        cc.target_rel_err = args.target;
        if (args.abscissa_set)
            cc.abscissa = args.abscissa;
        const specfun::GEvalInfo info = specfun::meijer_g_detailed(spec, cc);
        std::printf("value = %.17g\n", info.value);
        std::printf("rel_err_est = %.3g  abscissa = %.6g  half_height = %.6g  "
                    "panels = %d  evaluations = %ld\n",
                    info.rel_err, info.abscissa, info.half_height, info.panels,
                    info.evaluations);
        return 0;
    }
    if (args.kind == "egbmgf")
    {
        specfun::Egbmgf2Spec spec;
        spec.outer_a = {args.r};
        spec.inner2_a = args.a;
        spec.inner2_b = args.b;
        spec.A = args.A;
        spec.B = args.B;
        specfun::ContourConfig cc;
        cc.target_rel_err = args.target;
        const specfun::Egbmgf2Info info = specfun::egbmgf_detailed(spec, cc, cc);
        std::printf("value = %.17g\n", info.value);
        std::printf("rel_err_est = %.3g  evaluations = %ld\n", info.rel_err,
                    info.evaluations);
        return 0;
    }
    cfg_fail("specfun kind must be meijerg or egbmgf, got \"" + args.kind + "\"");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"mixed RF/FSO relay-link performance toolkit"};
    app.require_subcommand(1);

    Options opt;
    SpecfunArgs sf;

    CLI::App *analyze =
        app.add_subcommand("analyze", "closed-form metric sweep");
    CLI::App *simulate =
        app.add_subcommand("simulate", "Monte Carlo metric sweep");
    CLI::App *validate =
        app.add_subcommand("validate", "cross-validation report");
    CLI::App *specfun =
        app.add_subcommand("specfun", "direct special-function evaluation");

    for (CLI::App *sub : {analyze, simulate, validate})
    {
        sub->add_option("--config,-c", opt.config_path, "JSON run config");
        sub->add_option("--output,-o", opt.output_path,
                        "output file (stdout when omitted)");
        sub->add_option("--format,-f", opt.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--gamma-th", opt.gamma_th,
                        "outage threshold in dB (accepts a dB suffix)");
    }
    for (CLI::App *sub : {simulate, validate})
    {
        sub->add_option("--samples", opt.samples, "Monte Carlo sample count")
            ->each([&opt](const std::string &) { opt.samples_set = true; });
        sub->add_option("--seed", opt.seed, "simulation seed")
            ->each([&opt](const std::string &) { opt.seed_set = true; });
    }
    simulate->add_option("--threads", opt.threads,
                         "worker threads (0 = hardware)");
    validate->add_option("--suite", opt.suites,
                         "restrict to named suites (repeatable)");
    validate->add_option("--z-tol", opt.z_tol,
                         "|z| pass threshold for Monte Carlo rows");

    specfun->add_option("kind", sf.kind, "meijerg or egbmgf")->required();
    specfun->add_option("orders", sf.orders, "m n p q (meijerg)");
    specfun->add_option("--a", sf.a, "upper parameter row");
    specfun->add_option("--b", sf.b, "lower parameter row");
    specfun->add_option("--z", sf.z, "argument (meijerg)");
    specfun->add_option("--A", sf.A, "first argument (egbmgf)");
    specfun->add_option("--B", sf.B, "second argument (egbmgf)");
    specfun->add_option("--r", sf.r, "outer row value (egbmgf)");
    specfun->add_option("--target", sf.target, "relative accuracy target");
    specfun->add_option("--abscissa", sf.abscissa, "pinned contour abscissa")
        ->each([&sf](const std::string &) { sf.abscissa_set = true; });

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        if (analyze->parsed())
            return run_sweep_command(opt, false);
        if (simulate->parsed())
            return run_sweep_command(opt, true);
        if (validate->parsed())
            return cmd_validate(opt);
        return cmd_specfun(sf);
    }
    catch (const Error &e)
    {
        log::error(e.what());
        return e.code() == errc::config_error ? 2 : 3;
    }
    catch (const std::exception &e)
    {
        log::error(e.what());
        return 1;
    }
}
