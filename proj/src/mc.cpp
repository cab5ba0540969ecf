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

#include "rfso/mc.hpp"
#include "rfso/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

namespace rfso::mc
{

namespace
{

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> philox_round(std::array<std::uint32_t, 4> c,
                                                 std::array<std::uint32_t, 2> k)
{
    std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
    std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
    return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
            static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
            static_cast<std::uint32_t>(p0)};
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key)
{
    for (int round = 0; round < 10; round++)
    {
        if (round > 0)
        {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        ctr = philox_round(ctr, key);
    }
    return ctr;
}

RngStream::RngStream(std::uint64_t seed, std::uint32_t stream)
    : key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream)
{
}

void RngStream::begin_sample(std::uint64_t sample_index)
{
    sample_ = sample_index;
    draw_ = 0;
    have_spare_ = false;
}

std::uint64_t RngStream::next_bits()
{
    std::array<std::uint32_t, 4> ctr = {draw_++,
                                        static_cast<std::uint32_t>(sample_),
                                        static_cast<std::uint32_t>(sample_ >> 32),
                                        stream_};
    auto r = philox4x32(ctr, key_);
    return (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
}

double RngStream::u01()
{
    // Strictly interior to (0, 1): 53 significant bits, half-ulp offset.
    return ((next_bits() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal()
{
    if (have_spare_)
    {
        have_spare_ = false;
        return spare_normal_;
    }
    double u1 = u01();
    double u2 = u01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 2.0 * M_PI * u2;
    spare_normal_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
}

double RngStream::gamma(double shape)
{
    if (!(shape > 0.0))
        raise(errc::invalid_parameter, "gamma draw: shape must be positive");
    if (shape < 1.0)
    {
        // Boost from shape + 1 down with a uniform power factor.
        double g = gamma(shape + 1.0);
        return g * std::pow(u01(), 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze.
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;)
    {
        double x = normal();
        double t = 1.0 + c * x;
        if (t <= 0.0)
            continue;
        double v = t * t * t;
        double u = u01();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2)
            return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}

double RngStream::rayleigh(double sigma)
{
    return sigma * std::sqrt(-2.0 * std::log(u01()));
}

double RngStream::exponential()
{
    return -std::log(u01());
}

void SimPlan::validate() const
{
    if (samples < 1)
        raise(errc::invalid_parameter, "sim: sample count must be at least 1");
    if (streams < 1 || streams > 4096)
        raise(errc::invalid_parameter, "sim: streams must lie in [1, 4096]");
    if (estimators.empty())
        raise(errc::invalid_parameter, "sim: at least one estimator is required");
}

double sample_rf_selected(const channel::RfConfig &rf, RngStream &rng)
{
    // Outdated complex amplitudes of all M relays.
    std::array<double, 64> re{}, im{}, mag{};
    for (int i = 0; i < rf.M; i++)
    {
        re[i] = rng.normal() * M_SQRT1_2;
        im[i] = rng.normal() * M_SQRT1_2;
        mag[i] = re[i] * re[i] + im[i] * im[i];
    }
    // Index of the relay ranked l-th from the bottom.
    std::array<int, 64> order{};
    for (int i = 0; i < rf.M; i++)
        order[i] = i;
    std::nth_element(order.begin(), order.begin() + (rf.l - 1),
                     order.begin() + rf.M,
                     [&](int a, int b) { return mag[a] < mag[b]; });
    int sel = order[rf.l - 1];

    // Current channel of the selected relay; sqrt(rho) amplitude mixing
    // gives power correlation exactly rho.
    double wr = rng.normal() * M_SQRT1_2;
    double wi = rng.normal() * M_SQRT1_2;
    double sr = std::sqrt(rf.rho), sw = std::sqrt(1.0 - rf.rho);
    double hr = sr * re[sel] + sw * wr;
    double hi = sr * im[sel] + sw * wi;
    return rf.mu1 * (hr * hr + hi * hi);
}

double sample_fso_intensity(const channel::DerivedFsoParams &params, RngStream &rng)
{
    double x = rng.gamma(params.alpha) / params.alpha;
    double y = rng.gamma(params.beta) / params.beta;
    double sigma_s = params.a_deq / (2.0 * params.psi);
    double r = rng.rayleigh(sigma_s);
    double off = r / params.a_deq;
    return x * y * params.A0 * std::exp(-2.0 * off * off);
}

namespace
{

struct StreamSums
{
    // One compensated accumulator pair per metric, plus squares.
    std::vector<double> sum, comp, sq, sq_comp;
    std::uint64_t n = 0;

    explicit StreamSums(std::size_t metrics)
        : sum(metrics, 0.0), comp(metrics, 0.0), sq(metrics, 0.0),
          sq_comp(metrics, 0.0)
    {
    }

    void add(std::size_t k, double x)
    {
        double t = sum[k] + x;
        if (std::abs(sum[k]) >= std::abs(x))
            comp[k] += (sum[k] - t) + x;
        else
            comp[k] += (x - t) + sum[k];
        sum[k] = t;
        double x2 = x * x;
        double t2 = sq[k] + x2;
        if (std::abs(sq[k]) >= std::abs(x2))
            sq_comp[k] += (sq[k] - t2) + x2;
        else
            sq_comp[k] += (x2 - t2) + sq[k];
        sq[k] = t2;
    }
};

} // namespace

std::map<analytics::Metric, McEstimate>
estimate(const SimPlan &plan, const channel::RfConfig &rf,
         const analytics::FsoLink &fso,
         const std::optional<analytics::ModulationScheme> &mod,
         const std::optional<double> &gamma_th, unsigned threads, bool shannon)
{
    plan.validate();
    rf.validate();
    const auto &pr = fso.params;
    if (!(pr.alpha > 0.0) || !(pr.beta > 0.0) || !(pr.psi > 0.0))
        raise(errc::invalid_parameter, "mc: optical parameters must be derived first");

    bool want_cdf = false, want_ber = false;
    for (auto m : plan.estimators)
    {
        if (m == analytics::Metric::cdf)
            want_cdf = true;
        if (m == analytics::Metric::ber)
            want_ber = true;
    }
    if (want_cdf && !gamma_th)
        raise(errc::invalid_parameter, "mc: the cdf estimator needs gamma_th");
    if (want_cdf && !(*gamma_th > 0.0))
        raise(errc::invalid_parameter, "mc: gamma_th must be positive");
    if (want_ber && !mod)
        raise(errc::invalid_parameter, "mc: the ber estimator needs a modulation");

    double Re = channel::re_constant(rf);
    double c0 = shannon ? 1.0 : M_E / (2.0 * M_PI);
    double inv_mean_i = 1.0 / (pr.kappa * pr.A0); // gamma2 = mu2 (I / E[I])^2
    double gth = gamma_th.value_or(1.0);
    bool bpsk = mod && mod->name == analytics::Modulation::bpsk;

    const std::size_t n_metrics = plan.estimators.size();
    std::uint64_t per_stream = (plan.samples + plan.streams - 1) /
                               static_cast<std::uint64_t>(plan.streams);
    std::vector<StreamSums> partials(plan.streams, StreamSums(n_metrics));

    auto run_stream = [&](int si)
    {
        std::uint64_t first = per_stream * static_cast<std::uint64_t>(si);
        std::uint64_t last = std::min(plan.samples, first + per_stream);
        if (first >= last)
            return;
        RngStream rng(plan.seed, static_cast<std::uint32_t>(si));
        StreamSums &acc = partials[si];
        for (std::uint64_t s = first; s < last; s++)
        {
            rng.begin_sample(s);
            double g1 = sample_rf_selected(rf, rng);
            double intensity = sample_fso_intensity(pr, rng);
            double ratio = intensity * inv_mean_i;
            double g2 = fso.mu2 * ratio * ratio;
            double geq = channel::gamma_eq(g1, g2, Re);
            for (std::size_t k = 0; k < n_metrics; k++)
            {
                double value = 0.0;
                switch (plan.estimators[k])
                {
                case analytics::Metric::cdf:
                    value = geq < gth ? 1.0 : 0.0;
                    break;
                case analytics::Metric::ber:
                    value = bpsk ? 0.5 * std::erfc(std::sqrt(geq))
                                 : 0.5 * std::exp(-geq);
                    break;
                case analytics::Metric::capacity:
                    value = std::log2(1.0 + c0 * geq);
                    break;
                }
                acc.add(k, value);
            }
            acc.n++;
        }
    };

    unsigned hw = std::thread::hardware_concurrency();
    unsigned nt = threads ? threads : (hw ? hw : 1);
    nt = std::min<unsigned>(nt, static_cast<unsigned>(plan.streams));
    if (nt <= 1)
    {
        for (int si = 0; si < plan.streams; si++)
            run_stream(si);
    }
    else
    {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nt; w++)
            pool.emplace_back(
                [&, w]
                {
                    for (int si = static_cast<int>(w); si < plan.streams;
                         si += static_cast<int>(nt))
                        run_stream(si);
                });
        for (auto &t : pool)
            t.join();
    }

    // Reduce in stream order so the result is independent of scheduling.
    std::map<analytics::Metric, McEstimate> out;
    for (std::size_t k = 0; k < n_metrics; k++)
    {
        double sum = 0.0, comp = 0.0, sq = 0.0, sq_comp = 0.0;
        std::uint64_t n = 0;
        for (const auto &p : partials)
        {
            for (double x : {p.sum[k] + p.comp[k]})
            {
                double t = sum + x;
                if (std::abs(sum) >= std::abs(x))
                    comp += (sum - t) + x;
                else
                    comp += (x - t) + sum;
                sum = t;
            }
            for (double x : {p.sq[k] + p.sq_comp[k]})
            {
                double t = sq + x;
                if (std::abs(sq) >= std::abs(x))
                    sq_comp += (sq - t) + x;
                else
                    sq_comp += (x - t) + sq;
                sq = t;
            }
            n += p.n;
        }
        sum += comp;
        sq += sq_comp;
        McEstimate est;
        est.n = n;
        est.seed = plan.seed;
        est.mean = sum / static_cast<double>(n);
        double var = n > 1 ? std::max(0.0, (sq - static_cast<double>(n) * est.mean *
                                                     est.mean) /
                                               static_cast<double>(n - 1))
                           : 0.0;
        est.std_err = std::sqrt(var / static_cast<double>(n));
        est.low_sample_warning = plan.samples < 10000;
        out[plan.estimators[k]] = est;
    }
    return out;
}

} // namespace rfso::mc
