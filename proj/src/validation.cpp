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

#include "rfso/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rfso/errors.hpp"
#include "rfso/log.hpp"
#include "rfso/quadrature.hpp"
#include "rfso/specfun.hpp"

namespace rfso::validation
{
namespace
{

// Seed offsets keep the random streams of the different suites disjoint
// even though they share one user-facing seed.
constexpr std::uint64_t kDistributionSeedBase = 1000;
constexpr std::uint64_t kPhysicsSeedBase = 2000;

// A default report checks on the order of a hundred Monte-Carlo z scores,
// so a threshold sized for a single comparison flags a few rows per run by
// chance alone.  Two guards keep the false-alarm rate at the single-test
// level without losing sensitivity: worst-of-k-bins statistics are judged
// against the k-adjusted quantile of the same confidence, and any row
// landing outside its threshold is re-estimated twice under shifted seeds
// and judged on the median magnitude.  A real discrepancy grows like
// sqrt(n) and reproduces at every seed; a noise excursion does not.
constexpr std::uint64_t kRetrySeedStep = 1000003;

double erfc_inverse(double p)
{
    double lo = 0.0, hi = 60.0;
    for (int it = 0; it < 200; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        if (std::erfc(mid) > p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Threshold for the largest of `bins` independent |z| values with the same
// false-alarm probability as one two-sided z test at z_tol.
double worst_bin_threshold(double z_tol, int bins)
{
    const double p_row = std::erfc(z_tol / std::sqrt(2.0));
    if (p_row <= 0.0)
        return z_tol;
    const double p_bin = -std::expm1(std::log1p(-p_row) / bins);
    return std::sqrt(2.0) * erfc_inverse(p_bin);
}

struct Regime
{
    const char *name;
    double Cn2;
};

// Standard weak / moderate / strong refractive-index structure constants
// for the 2 km reference geometry.
constexpr Regime kRegimes[3] = {{"weak", 6e-15},
                                {"moderate", 2e-14},
                                {"strong", 5e-14}};

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<double> grid_points(double start, double stop, double step)
{
    std::vector<double> xs;
    long n = std::lround(std::floor((stop - start) / step + 1e-9));
    for (long k = 0; k <= n; ++k)
        xs.push_back(start + static_cast<double>(k) * step);
    return xs;
}

ChannelConfig apply_variable(const ChannelConfig &base, SweepVariable v, double x)
{
    ChannelConfig cfg = base;
    switch (v)
    {
    case SweepVariable::mu1_dB:
        cfg.rf = channel::RfConfig::from_dB(cfg.rf.M, cfg.rf.l, cfg.rf.rho, x);
        break;
    case SweepVariable::mu2_dB:
        cfg.fso.mu2_dB = x;
        cfg.fso.mu2 = channel::db_to_linear(x);
        break;
    case SweepVariable::mu_joint_dB:
        cfg.rf = channel::RfConfig::from_dB(cfg.rf.M, cfg.rf.l, cfg.rf.rho, x);
        cfg.fso.mu2_dB = x;
        cfg.fso.mu2 = channel::db_to_linear(x);
        break;
    case SweepVariable::sigma_s:
        cfg.fso.sigma_s = x;
        break;
    case SweepVariable::rho:
        cfg.rf.rho = x;
        break;
    case SweepVariable::M_count:
        cfg.rf.M = static_cast<int>(std::lround(x));
        cfg.rf.l = std::min(cfg.rf.l, cfg.rf.M);
        break;
    }
    return cfg;
}

double analytic_metric(analytics::Metric m, const ChannelConfig &cfg,
                       const analytics::FsoLink &link)
{
    switch (m)
    {
    case analytics::Metric::cdf:
        return analytics::cdf_eq(cfg.gamma_th, cfg.rf, link);
    case analytics::Metric::ber:
        return analytics::avg_ber(cfg.mod, cfg.rf, link);
    case analytics::Metric::capacity:
        return analytics::ergodic_capacity(cfg.rf, link, cfg.bandwidth,
                                           cfg.shannon);
    }
    raise(errc::invalid_parameter, "unreachable metric");
}

// Modified Bessel K0 by its ascending series; deliberately independent of
// the contour engine so the reduction identity has a second route.
double bessel_k0_series(double x)
{
    const double t = x * x / 4.0;
    double term = 1.0, i0 = 1.0, hsum = 0.0, h = 0.0;
    for (int k = 1; k < 80; ++k)
    {
        term *= t / (static_cast<double>(k) * k);
        h += 1.0 / k;
        i0 += term;
        hsum += term * h;
        if (term * (1.0 + h) < 1e-18 * (i0 + hsum))
            break;
    }
    constexpr double euler = 0.57721566490153286060651209008240243;
    return -(std::log(x / 2.0) + euler) * i0 + hsum;
}

ReportRow gap_row(const std::string &suite, const std::string &name, double x,
                  double analytic, double reference, double tol, bool absolute,
                  const std::string &note = {})
{
    ReportRow row;
    row.suite = suite;
    row.name = name;
    row.x = x;
    row.analytic = analytic;
    double gap = std::abs(analytic - reference);
    if (!absolute)
        gap /= std::max(std::abs(reference), 1e-300);
    row.rel_gap = gap;
    row.tolerance = tol;
    row.pass = gap <= tol;
    row.note = note.empty() ? (absolute ? "absolute gap vs reference"
                                        : "relative gap vs reference")
                            : note;
    return row;
}

// ---------------------------------------------------------------- suites

ComparisonReport suite_distributions(const ChannelConfig &base,
                                     const mc::SimPlan &plan, double z_tol);
ComparisonReport suite_equivalence(const ChannelConfig &base);
ComparisonReport suite_physics(const ChannelConfig &base,
                               const mc::SimPlan &plan, double z_tol);
ComparisonReport suite_qualitative(const ChannelConfig &base);

} // namespace

const char *sweep_variable_name(SweepVariable v)
{
    switch (v)
    {
    case SweepVariable::mu1_dB:
        return "mu1_dB";
    case SweepVariable::mu2_dB:
        return "mu2_dB";
    case SweepVariable::mu_joint_dB:
        return "mu_joint_dB";
    case SweepVariable::sigma_s:
        return "sigma_s";
    case SweepVariable::rho:
        return "rho";
    case SweepVariable::M_count:
        return "M";
    }
    return "unknown";
}

void SweepSpec::validate() const
{
    if (!(start < stop))
        raise(errc::config_error, "sweep start must be below stop");
    if (!(step > 0.0))
        raise(errc::config_error, "sweep step must be positive");
    if (metrics.empty())
        raise(errc::config_error, "sweep needs at least one metric");
    try
    {
        fixed.rf.validate();
        fixed.fso.validate();
    }
    catch (const Error &e)
    {
        raise(errc::config_error, e.what());
    }
}

void ComparisonReport::add(ReportRow row)
{
    if (row.has_mc)
        max_abs_z = std::max(max_abs_z, std::abs(row.z));
    max_rel_gap = std::max(max_rel_gap, row.rel_gap);
    all_pass = all_pass && row.pass;
    rows.push_back(std::move(row));
}

void ComparisonReport::merge(const ComparisonReport &other)
{
    max_abs_z = std::max(max_abs_z, other.max_abs_z);
    max_rel_gap = std::max(max_rel_gap, other.max_rel_gap);
    all_pass = all_pass && other.all_pass;
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

ComparisonReport run_sweep(const SweepSpec &spec, const mc::SimPlan &plan)
{
    spec.validate();
    plan.validate();
    const bool want_mc = spec.compare != CompareMode::analytic;

    ComparisonReport rep;
    rep.seed = plan.seed;
    rep.description =
        std::string("sweep over ") + sweep_variable_name(spec.variable);

    const std::vector<double> xs =
        grid_points(spec.start, spec.stop, spec.step);
    for (std::size_t k = 0; k < xs.size(); ++k)
    {
        const ChannelConfig cfg = apply_variable(spec.fixed, spec.variable, xs[k]);
        const std::uint64_t point_seed = plan.seed + k;
        try
        {
            const analytics::FsoLink link = cfg.fso_link();
            std::map<analytics::Metric, mc::McEstimate> est;
            if (want_mc)
            {
                mc::SimPlan p = plan;
                p.seed = point_seed;
                p.estimators = spec.metrics;
                est = mc::estimate(p, cfg.rf, link, cfg.mod, cfg.gamma_th,
                                   p.threads, cfg.shannon);
            }
            for (analytics::Metric m : spec.metrics)
            {
                ReportRow row;
                row.suite = "sweep";
                row.name = analytics::metric_name(m);
                row.x = xs[k];
                row.analytic = analytic_metric(m, cfg, link);
                row.seed = point_seed;
                if (want_mc)
                {
                    const mc::McEstimate &e = est.at(m);
                    row.has_mc = true;
                    row.mc_mean = e.mean;
                    row.mc_stderr = e.std_err;
                    row.n = e.n;
                    row.z = e.std_err > 0.0
                                ? (row.analytic - e.mean) / e.std_err
                                : 0.0;
                    row.tolerance = 3.0;
                    row.pass = std::abs(row.z) <= 3.0;
                }
                rep.add(row);
            }
        }
        catch (const Error &e)
        {
            // A failed point becomes a failing row; the sweep continues.
            ReportRow row;
            row.suite = "sweep";
            row.name = std::string("error:") + errc_name(e.code());
            row.x = xs[k];
            row.pass = false;
            row.note = e.what();
            row.seed = point_seed;
            rep.add(row);
        }
    }
    return rep;
}

ComparisonReport verify_special_functions()
{
    ComparisonReport rep;
    rep.description = "special-function identity suite";
    const double zs[5] = {0.01, 0.1, 1.0, 10.0, 100.0};

    specfun::ContourConfig tight;
    tight.target_rel_err = 1e-11;

    for (double z : zs)
    {
        specfun::MeijerGSpec e_spec{1, 0, 0, 1, {}, {0.0}, z};
        rep.add(gap_row("specfun", "exp_identity", z,
                        specfun::meijer_g(e_spec, tight), std::exp(-z), 1e-9,
                        false));
        specfun::MeijerGSpec r_spec{1, 1, 1, 1, {0.0}, {0.0}, z};
        rep.add(gap_row("specfun", "rational_identity", z,
                        specfun::meijer_g(r_spec, tight), 1.0 / (1.0 + z),
                        1e-9, false));
    }

    // Bessel reduction at unit argument against the series reference.
    specfun::MeijerGSpec k_spec{2, 0, 0, 2, {}, {0.0, 0.0}, 1.0};
    rep.add(gap_row("specfun", "bessel_identity", 1.0,
                    specfun::meijer_g(k_spec, tight),
                    2.0 * bessel_k0_series(2.0), 1e-8, false));

    // Contour invariance and refinement convergence on the optical CDF
    // kernel of the weak reference regime.
    ChannelConfig weak = default_config();
    weak.fso.Cn2 = kRegimes[0].Cn2;
    const channel::DerivedFsoParams dp = weak.derive_and_check();
    const double psi2 = dp.psi * dp.psi;
    const analytics::Chi1Row chi =
        analytics::Chi1Row::from(dp.alpha, dp.beta, psi2);
    specfun::MeijerGSpec opt{6,
                             0,
                             1,
                             6,
                             {(psi2 + 2.0) / 2.0},
                             {chi.v.begin(), chi.v.end()},
                             0.5};

    specfun::ContourConfig cc;
    cc.target_rel_err = 1e-10;
    const double base_val = specfun::meijer_g(opt, cc);
    for (double sigma : {-0.4, -0.8, -1.2})
    {
        specfun::ContourConfig pinned = cc;
        pinned.abscissa = sigma;
        rep.add(gap_row("specfun", "contour_invariance", sigma,
                        specfun::meijer_g(opt, pinned), base_val, 1e-8, false,
                        "pinned abscissa vs automatic"));
    }
    for (double target : {1e-4, 1e-6, 1e-8})
    {
        specfun::ContourConfig loose;
        loose.target_rel_err = target;
        rep.add(gap_row("specfun", "refinement_convergence", target,
                        specfun::meijer_g(opt, loose), base_val, target, false,
                        "coarse target vs tight reference"));
    }

    // Bivariate capacity kernel against direct CCDF quadrature on a
    // five-point joint-SNR grid.
    for (double mu_dB : {0.0, 10.0, 20.0, 30.0, 40.0})
    {
        ChannelConfig cfg = apply_variable(weak, SweepVariable::mu_joint_dB, mu_dB);
        const analytics::FsoLink link = cfg.fso_link();
        const double closed = analytics::ergodic_capacity(cfg.rf, link);
        const double direct =
            analytics::ergodic_capacity_by_quadrature(cfg.rf, link, 1.0, false,
                                                      1e-6);
        rep.add(gap_row("specfun", "capacity_kernel", mu_dB, closed, direct,
                        5e-3, false, "bivariate kernel vs CCDF quadrature"));
    }
    return rep;
}

namespace
{

// Inverts a scalar CDF by bisection on a bracket known to contain the
// quantile.
double invert_cdf(double prob, double lo, double hi,
                  const std::function<double(double)> &cdf)
{
    for (int it = 0; it < 200; ++it)
    {
        double mid = 0.5 * (lo + hi);
        if (cdf(mid) < prob)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

struct WorstBin
{
    double z = 0.0;
    int bin = -1;
};

WorstBin worst_bin_z(std::uint64_t n, const std::vector<double> &probs,
                     const std::vector<std::uint64_t> &counts)
{
    WorstBin w;
    for (std::size_t i = 0; i < probs.size(); ++i)
    {
        const double expect = static_cast<double>(n) * probs[i];
        const double sd =
            std::sqrt(static_cast<double>(n) * probs[i] * (1.0 - probs[i]));
        if (sd <= 0.0)
            continue;
        const double z = (static_cast<double>(counts[i]) - expect) / sd;
        if (std::abs(z) > std::abs(w.z))
        {
            w.z = z;
            w.bin = static_cast<int>(i);
        }
    }
    return w;
}

ReportRow histogram_row(
    const std::string &name, std::uint64_t n, std::uint64_t seed,
    const std::vector<double> &probs,
    const std::function<std::vector<std::uint64_t>(std::uint64_t)> &draw,
    double z_tol)
{
    const int bins = static_cast<int>(probs.size());
    const double tol = worst_bin_threshold(z_tol, bins);

    ReportRow row;
    row.suite = "distributions";
    row.name = name;
    row.has_mc = true;
    row.n = n;
    row.seed = seed;
    row.tolerance = tol;

    const WorstBin first = worst_bin_z(n, probs, draw(seed));
    row.z = first.z;
    row.pass = std::abs(first.z) <= tol;
    row.note = "worst of " + std::to_string(bins) + " bins (bin " +
               std::to_string(first.bin) + "); threshold is the " +
               std::to_string(bins) + "-bin quantile of z_tol " + fmt(z_tol);
    if (row.pass)
        return row;

    const WorstBin r1 = worst_bin_z(n, probs, draw(seed + kRetrySeedStep));
    const WorstBin r2 = worst_bin_z(n, probs, draw(seed + 2 * kRetrySeedStep));
    WorstBin trio[3] = {first, r1, r2};
    std::sort(trio, trio + 3, [](const WorstBin &a, const WorstBin &b) {
        return std::abs(a.z) < std::abs(b.z);
    });
    row.z = trio[1].z;
    row.pass = std::abs(trio[1].z) <= tol;
    row.note = "first draw z=" + fmt(first.z) + " (bin " +
               std::to_string(first.bin) + ") outside " + fmt(tol) +
               "; re-draws z=" + fmt(r1.z) + " (bin " + std::to_string(r1.bin) +
               "), z=" + fmt(r2.z) + " (bin " + std::to_string(r2.bin) +
               "): " + (row.pass ? "not reproduced" : "confirmed");
    return row;
}

ComparisonReport suite_distributions(const ChannelConfig &base,
                                     const mc::SimPlan &plan, double z_tol)
{
    ComparisonReport rep;
    rep.seed = plan.seed;
    rep.description = "pdf vs sampled histograms";
    const std::uint64_t n = plan.samples;
    constexpr int kBins = 50;

    // Selected-relay RF SNR, three selection configurations.
    struct RfCase
    {
        int M, l;
        double rho;
    };
    const RfCase rf_cases[3] = {{2, 2, 0.72}, {4, 1, 0.5}, {4, 4, 0.5}};
    std::uint64_t seed = plan.seed + kDistributionSeedBase;
    for (const RfCase &rc : rf_cases)
    {
        const channel::RfConfig rf =
            channel::RfConfig::from_dB(rc.M, rc.l, rc.rho, base.rf.mu1_dB);
        const double lo =
            invert_cdf(0.002, 0.0, 400.0 * rf.mu1,
                       [&](double x) { return channel::rf_cdf(x, rf); });
        const double hi =
            invert_cdf(0.998, 0.0, 400.0 * rf.mu1,
                       [&](double x) { return channel::rf_cdf(x, rf); });
        std::vector<double> edges(kBins + 1), probs(kBins);
        for (int i = 0; i <= kBins; ++i)
            edges[i] = lo + (hi - lo) * i / kBins;
        for (int i = 0; i < kBins; ++i)
            probs[i] = channel::rf_cdf(edges[i + 1], rf) -
                       channel::rf_cdf(edges[i], rf);

        const auto draw = [&](std::uint64_t s0) {
            std::vector<std::uint64_t> counts(kBins, 0);
            mc::RngStream rng(s0, 0);
            for (std::uint64_t s = 0; s < n; ++s)
            {
                rng.begin_sample(s);
                const double x = mc::sample_rf_selected(rf, rng);
                if (x < edges.front() || x >= edges.back())
                    continue;
                auto it = std::upper_bound(edges.begin(), edges.end(), x);
                ++counts[static_cast<std::size_t>(it - edges.begin()) - 1];
            }
            return counts;
        };
        rep.add(histogram_row("rf_snr_hist M=" + std::to_string(rc.M) +
                                  " l=" + std::to_string(rc.l) +
                                  " rho=" + fmt(rc.rho),
                              n, seed, probs, draw, z_tol));
        ++seed;
    }

    // Received optical intensity, three turbulence regimes.  Bin edges are
    // placed by an empirical quantile scan under a decoupled seed, then the
    // per-bin mass comes from quadrature over the closed-form density.
    for (const Regime &rg : kRegimes)
    {
        channel::FsoConfig fso = base.fso;
        fso.Cn2 = rg.Cn2;
        const channel::DerivedFsoParams dp = channel::derive_fso(fso);

        std::vector<double> probe(20000);
        mc::RngStream scout(seed + 500, 0);
        for (std::size_t s = 0; s < probe.size(); ++s)
        {
            scout.begin_sample(s);
            probe[s] = mc::sample_fso_intensity(dp, scout);
        }
        std::sort(probe.begin(), probe.end());
        const double lo = probe[static_cast<std::size_t>(0.004 * probe.size())];
        const double hi = probe[static_cast<std::size_t>(0.996 * probe.size())];

        std::vector<double> edges(kBins + 1), probs(kBins);
        const double ratio = std::log(hi / lo);
        for (int i = 0; i <= kBins; ++i)
            edges[i] = lo * std::exp(ratio * i / kBins);
        for (int i = 0; i < kBins; ++i)
        {
            quadrature::QuadResult r = quadrature::integrate(
                [&](double x) { return channel::fso_intensity_pdf(x, dp); },
                edges[i], edges[i + 1], 1e-9, 0.0);
            probs[i] = r.value;
        }

        const auto draw = [&](std::uint64_t s0) {
            std::vector<std::uint64_t> counts(kBins, 0);
            mc::RngStream rng(s0, 0);
            for (std::uint64_t s = 0; s < n; ++s)
            {
                rng.begin_sample(s);
                const double x = mc::sample_fso_intensity(dp, rng);
                if (x < edges.front() || x >= edges.back())
                    continue;
                auto it = std::upper_bound(edges.begin(), edges.end(), x);
                ++counts[static_cast<std::size_t>(it - edges.begin()) - 1];
            }
            return counts;
        };
        rep.add(histogram_row(std::string("fso_intensity_hist ") + rg.name, n,
                              seed, probs, draw, z_tol));
        ++seed;
    }
    return rep;
}

ComparisonReport suite_equivalence(const ChannelConfig &base)
{
    ComparisonReport rep;
    rep.description = "closed form vs defining integrals";
    for (const Regime &rg : kRegimes)
    {
        ChannelConfig cfg = base;
        cfg.fso.Cn2 = rg.Cn2;
        for (double mu1_dB : {10.0, 20.0, 30.0})
            for (double mu2_dB : {10.0, 20.0, 30.0})
            {
                cfg.rf = channel::RfConfig::from_dB(base.rf.M, base.rf.l,
                                                    base.rf.rho, mu1_dB);
                cfg.fso.mu2_dB = mu2_dB;
                cfg.fso.mu2 = channel::db_to_linear(mu2_dB);
                const analytics::FsoLink link = cfg.fso_link();
                const std::string at =
                    std::string(rg.name) + " mu1=" + fmt(mu1_dB) +
                    "dB mu2=" + fmt(mu2_dB) + "dB";
                const double x = mu1_dB + mu2_dB / 100.0;

                rep.add(gap_row(
                    "equivalence", "cdf " + at, x,
                    analytics::cdf_eq(cfg.gamma_th, cfg.rf, link),
                    analytics::cdf_eq_by_quadrature(cfg.gamma_th, cfg.rf, link,
                                                    1e-8),
                    1e-5, true));
                rep.add(gap_row(
                    "equivalence", "ber " + at, x,
                    analytics::avg_ber(cfg.mod, cfg.rf, link),
                    analytics::avg_ber_by_quadrature(cfg.mod, cfg.rf, link,
                                                     1e-8),
                    1e-5, false));
                rep.add(gap_row(
                    "equivalence", "capacity " + at, x,
                    analytics::ergodic_capacity(cfg.rf, link),
                    analytics::ergodic_capacity_by_quadrature(cfg.rf, link,
                                                              1.0, false,
                                                              1e-6),
                    5e-3, false));
            }
    }
    return rep;
}

ComparisonReport suite_physics(const ChannelConfig &base,
                               const mc::SimPlan &plan, double z_tol)
{
    ComparisonReport rep;
    rep.seed = plan.seed;
    rep.description = "closed form vs Monte Carlo";
    std::uint64_t k = 0;
    for (const Regime &rg : kRegimes)
    {
        ChannelConfig cfg = base;
        cfg.fso.Cn2 = rg.Cn2;
        for (double mu1_dB : {10.0, 20.0, 30.0})
            for (double mu2_dB : {10.0, 20.0, 30.0})
            {
                cfg.rf = channel::RfConfig::from_dB(base.rf.M, base.rf.l,
                                                    base.rf.rho, mu1_dB);
                cfg.fso.mu2_dB = mu2_dB;
                cfg.fso.mu2 = channel::db_to_linear(mu2_dB);
                const analytics::FsoLink link = cfg.fso_link();

                mc::SimPlan p = plan;
                p.seed = plan.seed + kPhysicsSeedBase + k;
                auto est = mc::estimate(p, cfg.rf, link, cfg.mod,
                                        cfg.gamma_th, p.threads, cfg.shannon);
                // Confirmation re-draws, shared across the metrics of this
                // grid point and computed only when a z lands outside.
                std::map<analytics::Metric, mc::McEstimate> retries[2];
                const auto retry = [&](int r) -> const auto & {
                    if (retries[r - 1].empty())
                    {
                        mc::SimPlan pr = p;
                        pr.seed = p.seed + static_cast<std::uint64_t>(r) *
                                               kRetrySeedStep;
                        retries[r - 1] =
                            mc::estimate(pr, cfg.rf, link, cfg.mod,
                                         cfg.gamma_th, pr.threads, cfg.shannon);
                    }
                    return retries[r - 1];
                };
                const std::string at =
                    std::string(rg.name) + " mu1=" + fmt(mu1_dB) +
                    "dB mu2=" + fmt(mu2_dB) + "dB";
                for (analytics::Metric m : p.estimators)
                {
                    ReportRow row;
                    row.suite = "physics";
                    row.name = std::string(analytics::metric_name(m)) + " " + at;
                    row.x = mu1_dB + mu2_dB / 100.0;
                    row.analytic = analytic_metric(m, cfg, link);
                    row.has_mc = true;
                    row.tolerance = z_tol;
                    const auto z_of = [&](const mc::McEstimate &e) {
                        return e.std_err > 0.0 ? (row.analytic - e.mean) / e.std_err
                                               : 0.0;
                    };
                    mc::McEstimate e[3] = {est.at(m)};
                    std::uint64_t seeds[3] = {p.seed};
                    double zs[3] = {z_of(e[0])};
                    int use = 0;
                    if (std::abs(zs[0]) > z_tol)
                    {
                        for (int r = 1; r <= 2; ++r)
                        {
                            e[r] = retry(r).at(m);
                            seeds[r] = p.seed + static_cast<std::uint64_t>(r) *
                                                    kRetrySeedStep;
                            zs[r] = z_of(e[r]);
                        }
                        int order[3] = {0, 1, 2};
                        std::sort(order, order + 3, [&](int a, int b) {
                            return std::abs(zs[a]) < std::abs(zs[b]);
                        });
                        use = order[1];
                        row.note = "first draw z=" + fmt(zs[0]) + " outside " +
                                   fmt(z_tol) + "; re-draws z=" + fmt(zs[1]) +
                                   ", z=" + fmt(zs[2]) + ": " +
                                   (std::abs(zs[use]) <= z_tol ? "not reproduced"
                                                               : "confirmed");
                    }
                    row.mc_mean = e[use].mean;
                    row.mc_stderr = e[use].std_err;
                    row.n = e[use].n;
                    row.seed = seeds[use];
                    row.z = zs[use];
                    row.pass = std::abs(row.z) <= z_tol;
                    rep.add(row);
                }
                ++k;
            }
    }
    return rep;
}

ComparisonReport suite_qualitative(const ChannelConfig &base)
{
    ComparisonReport rep;
    rep.description = "qualitative trend checks";

    // (a) High-mu1 BER floor: flat in mu1 once the RF hop saturates, while
    // growing mu2 alongside mu1 keeps the error rate falling.
    for (int r = 0; r < 3; ++r)
    {
        ChannelConfig cfg = base;
        cfg.fso.Cn2 = kRegimes[r].Cn2;
        cfg.fso.mu2_dB = 30.0;
        cfg.fso.mu2 = channel::db_to_linear(30.0);
        double vals[3];
        for (int i = 0; i < 3; ++i)
        {
            const double mu1_dB = 60.0 + 10.0 * i;
            cfg.rf = channel::RfConfig::from_dB(base.rf.M, base.rf.l,
                                                base.rf.rho, mu1_dB);
            vals[i] = analytics::avg_ber(cfg.mod, cfg.rf, cfg.fso_link());
        }
        const double spread =
            (*std::max_element(vals, vals + 3) - *std::min_element(vals, vals + 3)) /
            *std::min_element(vals, vals + 3);
        ReportRow row;
        row.suite = "qualitative";
        row.name = std::string("ber_floor_flat ") + kRegimes[r].name;
        row.analytic = vals[2];
        row.rel_gap = spread;
        row.tolerance = 0.01;
        row.pass = spread <= 0.01;
        row.note = "relative spread over mu1 in {60,70,80} dB at mu2=30dB";
        rep.add(row);

        ChannelConfig joint = cfg;
        joint.rf = channel::RfConfig::from_dB(base.rf.M, base.rf.l,
                                              base.rf.rho, 60.0);
        joint.fso.mu2_dB = 60.0;
        joint.fso.mu2 = channel::db_to_linear(60.0);
        const double unfloored =
            analytics::avg_ber(joint.mod, joint.rf, joint.fso_link());
        ReportRow row2;
        row2.suite = "qualitative";
        row2.name = std::string("ber_no_floor_joint ") + kRegimes[r].name;
        row2.analytic = unfloored;
        row2.rel_gap = unfloored / vals[0];
        row2.tolerance = 0.25;
        row2.pass = row2.rel_gap <= 0.25;
        row2.note = "ber(60,60) well below the mu2=30dB floor " + fmt(vals[0]);
        rep.add(row2);
    }

    // (b) Zero correlation makes the selection index irrelevant.
    {
        ChannelConfig lo = base, hi = base;
        lo.rf = channel::RfConfig::from_dB(4, 1, 0.0, base.rf.mu1_dB);
        hi.rf = channel::RfConfig::from_dB(4, 4, 0.0, base.rf.mu1_dB);
        const analytics::FsoLink link = base.fso_link();
        rep.add(gap_row("qualitative", "rho0_l_independence_ber", 0.0,
                        analytics::avg_ber(lo.mod, lo.rf, link),
                        analytics::avg_ber(hi.mod, hi.rf, link), 1e-6, false,
                        "l=1 vs l=M at rho=0"));
        rep.add(gap_row("qualitative", "rho0_l_independence_capacity", 0.0,
                        analytics::ergodic_capacity(lo.rf, link),
                        analytics::ergodic_capacity(hi.rf, link), 1e-6, false,
                        "l=1 vs l=M at rho=0"));
    }

    // (c) Correlation helps best-relay selection and hurts worst-relay
    // selection, monotonically.
    {
        const analytics::FsoLink link = base.fso_link();
        const double rhos[4] = {0.0, 0.3, 0.6, 0.9};
        double best[4], worst[4];
        for (int i = 0; i < 4; ++i)
        {
            best[i] = analytics::avg_ber(
                base.mod,
                channel::RfConfig::from_dB(4, 4, rhos[i], base.rf.mu1_dB),
                link);
            worst[i] = analytics::avg_ber(
                base.mod,
                channel::RfConfig::from_dB(4, 1, rhos[i], base.rf.mu1_dB),
                link);
        }
        ReportRow row;
        row.suite = "qualitative";
        row.name = "rho_monotone_best";
        row.pass = best[0] > best[1] && best[1] > best[2] && best[2] > best[3];
        row.note = "l=M BER decreasing in rho: " + fmt(best[0]) + " > " +
                   fmt(best[1]) + " > " + fmt(best[2]) + " > " + fmt(best[3]);
        rep.add(row);
        ReportRow row2;
        row2.suite = "qualitative";
        row2.name = "rho_monotone_worst";
        row2.pass =
            worst[0] < worst[1] && worst[1] < worst[2] && worst[2] < worst[3];
        row2.note = "l=1 BER increasing in rho: " + fmt(worst[0]) + " < " +
                    fmt(worst[1]) + " < " + fmt(worst[2]) + " < " +
                    fmt(worst[3]);
        rep.add(row2);
    }

    // (d) Capacity floors when only the optical SNR grows, and keeps
    // growing when both hops improve together.
    {
        auto capacity_at = [&](double mu1_dB, double mu2_dB) {
            ChannelConfig cfg = base;
            cfg.rf = channel::RfConfig::from_dB(base.rf.M, base.rf.l,
                                                base.rf.rho, mu1_dB);
            cfg.fso.mu2_dB = mu2_dB;
            cfg.fso.mu2 = channel::db_to_linear(mu2_dB);
            return analytics::ergodic_capacity(cfg.rf, cfg.fso_link());
        };
        rep.add(gap_row("qualitative", "capacity_floor_fixed_mu1", 20.0,
                        capacity_at(20.0, 80.0), capacity_at(20.0, 70.0), 0.01,
                        false, "mu2 70dB vs 80dB at mu1=20dB"));
        const double c70 = capacity_at(70.0, 70.0);
        const double c80 = capacity_at(80.0, 80.0);
        ReportRow row;
        row.suite = "qualitative";
        row.name = "capacity_no_joint_floor";
        row.analytic = c80;
        row.pass = c80 - c70 > 1.0;
        row.note = "joint 70dB " + fmt(c70) + " vs 80dB " + fmt(c80) +
                   " (must keep growing)";
        rep.add(row);
    }

    // (e) Longer optical path and larger pointing jitter both cost
    // capacity.
    {
        auto capacity_fso = [&](double d, double sigma_s) {
            ChannelConfig cfg = base;
            cfg.fso.d = d;
            cfg.fso.sigma_s = sigma_s;
            return analytics::ergodic_capacity(cfg.rf, cfg.fso_link());
        };
        const double near = capacity_fso(2000.0, base.fso.sigma_s);
        const double far = capacity_fso(6000.0, base.fso.sigma_s);
        ReportRow row;
        row.suite = "qualitative";
        row.name = "capacity_decreasing_in_distance";
        row.pass = near > far;
        row.note = "d=2km " + fmt(near) + " > d=6km " + fmt(far);
        rep.add(row);

        const double j1 = capacity_fso(base.fso.d, 0.05);
        const double j2 = capacity_fso(base.fso.d, 0.10);
        const double j3 = capacity_fso(base.fso.d, 0.15);
        ReportRow row2;
        row2.suite = "qualitative";
        row2.name = "capacity_decreasing_in_jitter";
        row2.pass = j1 > j2 && j2 > j3;
        row2.note = "sigma_s 0.05m " + fmt(j1) + " > 0.10m " + fmt(j2) +
                    " > 0.15m " + fmt(j3);
        rep.add(row2);
    }
    return rep;
}

} // namespace

std::set<std::string> known_suites()
{
    return {"specfun", "distributions", "equivalence", "physics", "qualitative"};
}

ComparisonReport run_default_validation(const ChannelConfig &base,
                                        const mc::SimPlan &plan,
                                        const std::set<std::string> &suites,
                                        double z_tol)
{
    const std::set<std::string> known = known_suites();
    std::set<std::string> want = suites.empty() ? known : suites;
    for (const std::string &s : want)
        if (!known.count(s))
            raise(errc::config_error, "unknown validation suite \"" + s + "\"");
    if (!(z_tol > 0.0))
        raise(errc::config_error, "z tolerance must be positive");
    plan.validate();

    ComparisonReport rep;
    rep.seed = plan.seed;
    std::string names;
    const char *ordered[] = {"specfun", "distributions", "equivalence",
                             "physics", "qualitative"};
    for (const char *name : ordered)
    {
        if (!want.count(name))
            continue;
        log::info(std::string("validation suite: ") + name);
        if (std::string(name) == "specfun")
            rep.merge(verify_special_functions());
        else if (std::string(name) == "distributions")
            rep.merge(suite_distributions(base, plan, z_tol));
        else if (std::string(name) == "equivalence")
            rep.merge(suite_equivalence(base));
        else if (std::string(name) == "physics")
            rep.merge(suite_physics(base, plan, z_tol));
        else
            rep.merge(suite_qualitative(base));
        names += names.empty() ? name : std::string(" ") + name;
    }
    rep.description = "suites: " + names;
    return rep;
}

} // namespace rfso::validation
