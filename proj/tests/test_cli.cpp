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
// End-to-end checks of the built command-line binary.  The build defines
// RFSO_CLI_PATH with its location; the environment can override it.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace
{

std::string cli_path()
{
    if (const char *p = std::getenv("RFSO_CLI_PATH"))
        return p;
#ifdef RFSO_CLI_PATH
    return RFSO_CLI_PATH;
#else
    FAIL("RFSO_CLI_PATH is not defined");
    return {};
#endif
}

fs::path work_dir()
{
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("rfso_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string &args, const std::string &capture_name = "")
{
    std::string cmd = cli_path() + " " + args;
    if (!capture_name.empty())
        cmd += " > " + (work_dir() / capture_name).string() + " 2>&1";
    else
        cmd += " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path write_file(const std::string &name, const std::string &text)
{
    const fs::path p = work_dir() / name;
    std::ofstream out(p);
    out << text;
    return p;
}

const char *kSweepConfig = R"({
  "rf": {"M": 2, "l": 2, "rho": 0.72, "mu1_dB": 20.0},
  "fso": {"d_m": 2000.0, "Cn2": 6e-15, "lambda_m": 1.55e-6,
          "a_m": 0.05, "a0_m": 0.05, "sigma_s_m": 0.05, "mu2_dB": 20.0},
  "sweep": {"variable": "mu_joint_dB", "start": 0.0, "stop": 40.0,
            "step": 2.0, "metrics": ["ber"]}
})";

// Data lines of a CSV payload, comments and header stripped.
std::vector<std::vector<std::string>> csv_rows(const std::string &text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
    {
        if (line.empty() || line[0] == '#' || line.rfind("x,", 0) == 0)
            continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

} // namespace

TEST_CASE("analyze emits the fixed csv schema")
{
    const fs::path cfg = write_file("sweep.json", kSweepConfig);
    const fs::path out = work_dir() / "analyze.csv";
    const int rc =
        run("analyze --config " + cfg.string() + " --output " + out.string());
    CHECK(rc == 0);

    const std::string text = slurp(out);
    CHECK(text.find("# config=") != std::string::npos);
    CHECK(text.find("x,metric,method,value,std_err,n,seed\n") !=
          std::string::npos);

    const auto rows = csv_rows(text);
    REQUIRE(rows.size() == 21);
    double prev = 1.0;
    for (const auto &r : rows)
    {
        REQUIRE(r.size() >= 4);
        CHECK(r[1] == "ber");
        CHECK(r[2] == "analytic");
        const double v = std::stod(r[3]);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("threshold override touches only outage rows")
{
    std::string cfg_text(kSweepConfig);
    cfg_text.replace(cfg_text.find(R"(["ber"])"), 7, R"(["cdf", "ber"])");
    cfg_text.replace(cfg_text.find("\"stop\": 40.0"), 12, "\"stop\": 10.0");
    const fs::path cfg = write_file("two_metrics.json", cfg_text);

    const fs::path base = work_dir() / "gamma_base.csv";
    const fs::path moved = work_dir() / "gamma_moved.csv";
    CHECK(run("analyze -c " + cfg.string() + " --gamma-th 0dB -o " +
              base.string()) == 0);
    CHECK(run("analyze -c " + cfg.string() + " --gamma-th 3dB -o " +
              moved.string()) == 0);

    const auto a = csv_rows(slurp(base));
    const auto b = csv_rows(slurp(moved));
    REQUIRE(a.size() == b.size());
    bool cdf_changed = false;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        REQUIRE(a[i][1] == b[i][1]);
        if (a[i][1] == "ber")
            CHECK(a[i][3] == b[i][3]);
        else if (a[i][3] != b[i][3])
            cdf_changed = true;
    }
    CHECK(cdf_changed);
}

TEST_CASE("simulate echoes its seed and reproduces itself")
{
    std::string cfg_text(kSweepConfig);
    cfg_text.replace(cfg_text.find("\"stop\": 40.0"), 12, "\"stop\": 10.0");
    cfg_text.replace(cfg_text.find("\"step\": 2.0"), 11, "\"step\": 5.0");
    const fs::path cfg = write_file("sim.json", cfg_text);

    const fs::path out1 = work_dir() / "sim1.csv";
    const fs::path out2 = work_dir() / "sim2.csv";
    const std::string args = "simulate -c " + cfg.string() +
                             " --samples 20000 --seed 31337 -o ";
    CHECK(run(args + out1.string()) == 0);
    CHECK(run(args + out2.string()) == 0);

    const std::string t1 = slurp(out1);
    CHECK(t1 == slurp(out2));
    CHECK(t1.find("# seed=31337") != std::string::npos);

    const auto rows = csv_rows(t1);
    REQUIRE(rows.size() == 3);
    for (const auto &r : rows)
    {
        REQUIRE(r.size() == 7);
        CHECK(r[2] == "mc");
        CHECK(std::stod(r[4]) > 0.0); // std_err
        CHECK(r[5] == "20000");
    }
}

TEST_CASE("a generated seed is echoed for replay")
{
    std::string cfg_text(kSweepConfig);
    cfg_text.replace(cfg_text.find("\"stop\": 40.0"), 12, "\"stop\": 2.0");
    const fs::path cfg = write_file("sim_noseed.json", cfg_text);
    const fs::path out = work_dir() / "sim_noseed.csv";
    CHECK(run("simulate -c " + cfg.string() + " --samples 20000 -o " +
              out.string()) == 0);
    const std::string text = slurp(out);
    const auto pos = text.find("# seed=");
    REQUIRE(pos != std::string::npos);
    const std::string tail = text.substr(pos + 7);
    CHECK(std::stoull(tail) != 0ull);
}

TEST_CASE("sample floor is a config error")
{
    const fs::path cfg = write_file("floor.json", kSweepConfig);
    CHECK(run("simulate -c " + cfg.string() + " --samples 5000 -o " +
              (work_dir() / "floor.csv").string()) == 2);
}

TEST_CASE("config failures exit 2 with a diagnostic")
{
    CHECK(run("analyze -c /nonexistent/rfso.json") == 2);

    const fs::path bad = write_file("bad.json", "{ not json");
    CHECK(run("analyze -c " + bad.string()) == 2);

    const fs::path unknown = write_file("unknown.json", R"({
      "rf": {"M": 2, "l": 2, "rho": 0.72, "mu1_dB": 20.0, "bogus": 1},
      "fso": {"d_m": 2000.0, "Cn2": 6e-15, "lambda_m": 1.55e-6,
              "a_m": 0.05, "a0_m": 0.05, "sigma_s_m": 0.05, "mu2_dB": 20.0}
    })");
    const int rc = run("analyze -c " + unknown.string(), "unknown.log");
    CHECK(rc == 2);
    CHECK(slurp(work_dir() / "unknown.log").find("rf.bogus") !=
          std::string::npos);

    CHECK(run("analyze --no-such-flag") == 2);
    CHECK(run("validate --suite bogus") == 2);
}

TEST_CASE("evaluator failures exit 3 naming the grid point")
{
    const char *cfg_text = R"({
      "rf": {"M": 2, "l": 2, "rho": 0.72, "mu1_dB": 20.0},
      "fso": {"d_m": 2000.0, "Cn2": 6e-15, "lambda_m": 1.55e-6,
              "a_m": 0.05, "a0_m": 0.05, "sigma_s_m": 0.05, "mu2_dB": 20.0},
      "sweep": {"variable": "sigma_s", "start": 0.0, "stop": 0.1,
                "step": 0.05, "metrics": ["ber"]}
    })";
    const fs::path cfg = write_file("degenerate.json", cfg_text);
    const int rc = run("analyze -c " + cfg.string() + " -o " +
                           (work_dir() / "degenerate.csv").string(),
                       "degenerate.log");
    CHECK(rc == 3);
    CHECK(slurp(work_dir() / "degenerate.log").find("x=0") !=
          std::string::npos);
}

TEST_CASE("identity suite passes through the front end")
{
    const fs::path out = work_dir() / "specfun.json";
    const int rc =
        run("validate --suite specfun --format json -o " + out.string());
    CHECK(rc == 0);

    const auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc.at("command") == "validate");
    CHECK(doc.at("summary").at("all_pass") == true);
    CHECK(doc.at("rows").size() > 10);
    // The echoed config must itself be loadable.
    CHECK(doc.at("config").contains("rf"));
}

TEST_CASE("corrupted tolerance turns the report red")
{
    const fs::path out = work_dir() / "redreport.csv";
    const int rc = run("validate --suite physics --samples 10000 --seed 8 "
                       "--z-tol 0.001 -o " +
                       out.string());
    CHECK(rc == 1);
    const std::string text = slurp(out);
    CHECK(text.find("# all_pass=false") != std::string::npos);
    CHECK(text.find("FAIL") != std::string::npos);
}

TEST_CASE("direct evaluator access prints value and error estimate")
{
    const int rc = run("specfun meijerg 1 0 0 1 --b 0 --z 1", "exp.log");
    CHECK(rc == 0);
    const std::string text = slurp(work_dir() / "exp.log");
    CHECK(text.find("0.3678794411714") != std::string::npos);
    CHECK(text.find("rel_err_est") != std::string::npos);

    CHECK(run("specfun meijerg 2 0 0 2 --b 0 0 --z 1", "bessel.log") == 0);
    CHECK(slurp(work_dir() / "bessel.log").find("0.2277877454") !=
          std::string::npos);

    CHECK(run("specfun meijerg 1 0 0 1 --b 0 --z -3") == 3);
}
