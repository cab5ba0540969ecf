// SPDX-License-Identifier: Apache-2.0
//
// Generated by tests/oracle/gen_frozen.py; do not edit by hand.
// High-precision reference values for special functions, FSO
// parameter chains and end-to-end performance metrics.

#pragma once

#include <limits>

namespace oracle {

struct LgammaCase { double re_in, im_in, re_out, im_out; };
inline constexpr LgammaCase lgamma_cases[] = {
    {0.5, 0.0, 0.5723649429247001, 0.0},
    {1.0, 0.0, 0.0, 0.0},
    {2.0, 0.0, 0.0, 0.0},
    {3.7, 0.0, 1.4280723266653879, 0.0},
    {12.25, 0.0, 18.115669505710894, 0.0},
    {0.1, 0.0, 2.252712651734206, 0.0},
    {0.001, 0.0, 6.907178885383853, 0.0},
    {16.0, 0.0, 27.89927138384089, 0.0},
    {3.0, 4.0, -1.7566267846037842, 4.742664438034658},
    {0.5, 30.0, -46.204951270642226, 72.0373104288058},
    {25.5, 10.0, 54.43958371799499, 32.44409230156618},
    {0.25, 0.25, 0.9044745094933389, -0.8388702439432129},
    {7.5, -2.5, 7.097641895023801, -4.917883340149792},
    {0.05, 120.0, -189.73099171903704, 453.7916542575113},
};

struct ErfCase { double x, value; };
inline constexpr ErfCase erf_cases[] = {
    {1.0, 0.8427007929497149},
    {0.5, 0.5204998778130465},
    {2.5, 0.999593047982555},
    {0.0001, 0.00011283791633342487},
    {-1.25, -0.9229001282564583},
};

inline constexpr double two_k0_two = 0.22778774549906688;

struct FsoChain {
    double cn2, dist, rytov2, alpha, beta, lambda_o, a_d, v,
        big_a0, a_deq, psi, kappa;
};
inline constexpr FsoChain fso_weak = {
    6e-15, 2000.0, 0.4256972902974706,
    6.600691973919505, 5.053573766851191, 0.39470425886790045,
    0.06467815613696114, 0.968885178684986, 0.6878692223905191,
    0.09007720189121086, 0.9007720189121086, 0.447937841660083};
inline constexpr FsoChain fso_moderate = {
    2e-14, 2000.0, 1.4189909676582353,
    4.079297725897728, 2.0464602172656003, 0.39470425886790045,
    0.08025295727936099, 0.780852307381463, 0.5336791577042348,
    0.09912207498272951, 0.9912207498272951, 0.4955911068543707};
inline constexpr FsoChain fso_strong = {
    5e-14, 2000.0, 3.5474774191455882,
    4.236293627839288, 1.3564231445678656, 0.39470425886790045,
    0.11115931575265527, 0.5637467848867909, 0.33027893512238515,
    0.12385346884570812, 1.2385346884570814, 0.6053620522709253};
inline constexpr FsoChain fso_weak_far = {
    6e-15, 6000.0, 3.190238751638503,
    4.158688510002115, 1.4044395521504904, 1.1841127766037014,
    0.15202649091069928, 0.41220254766378184, 0.1936597972291013,
    0.16098742941799032, 1.6098742941799034, 0.7215799414129332};

// Meijer G anchors; alpha/beta/psi^2 below are the binary64 kernel
// parameters the anchors were computed with.
struct GKernelParams { double alpha, beta, psi2; };
inline constexpr GKernelParams gk_weak = {6.600691973919505, 5.053573766851191, 0.8113902300549961};
inline constexpr GKernelParams gk_moderate = {4.079297725897728, 2.0464602172656003, 0.9825185748881852};
inline constexpr GKernelParams gk_strong = {4.236293627839288, 1.3564231445678656, 1.5339681745114797};

struct GAnchor { int regime; double z, value; };  // regime: 0 weak, 1 moderate, 2 strong
inline constexpr GAnchor g6016_anchors[] = {
    {0, 1e-06, 86.20591321714899},
    {0, 0.001, 84.46146376248649},
    {0, 0.25, 69.5666636758341},
    {0, 5.0, 39.501347296178146},
    {0, 200.0, 2.3200529601956212},
    {1, 0.5, 0.9327298734849754},
    {2, 0.5, 0.7951936150715395},
    {0, 10000.0, 4.829460430315162e-05},
};

struct GBerAnchor { double p, z, value; };  // weak-regime kernel
inline constexpr GBerAnchor g6126_anchors[] = {
    {0.5, 0.1, 140.43296160868766},
    {0.5, 2.0, 114.37338087274078},
    {1.0, 0.1, 75.92173339808389},
    {1.0, 2.0, 55.32870336586643},
};

struct GSnrAnchor { double z, value; };  // weak-regime kernel
inline constexpr GSnrAnchor g3013_snr_anchors[] = {
    {0.3, 259.6436676390771},
    {2.0, 1208.2407658924312},
};
inline constexpr GSnrAnchor g3013_intensity_anchors[] = {
    {0.5, 785.9767651050938},
};

// Bivariate-G anchors (weak-regime kernel parameters).
struct EgbAnchor { double a, b, value; };
inline constexpr EgbAnchor egb_anchors[] = {
    {43.26279897161326, 19.11666997518878, 3.7742190877238166},
    {27.688191341832482, 19.11666997518878, 4.973671368276155},
};

// End-to-end metric anchors.  mu values are linear SNRs.
struct MetricAnchor {
    int regime;
    int M, l;
    double rho, mu1, mu2;
    double gamma_th, cdf_value;
    double ber_bpsk, ber_dbpsk;
    double cap_sim, cap_shannon;  // bandwidth 1 Hz; NaN if not computed
};
inline constexpr MetricAnchor metric_anchors[] = {
    {0, 2, 2, 0.72, 100.0, 100.0, 1.0, 0.14676186959465387, 0.043983828955866784, 0.06511603128646633, 3.1564355828546815, 4.095872326330438},
    {1, 4, 1, 0.5, 100.0, 100.0, 1.0, 0.19303758252811354, 0.05598200267108708, std::numeric_limits<double>::quiet_NaN(), 2.5001823324410295, std::numeric_limits<double>::quiet_NaN()},
    {2, 4, 4, 0.5, 316.22776601683796, 31.622776601683793, 2.5, 0.3631987938883219, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()},
};

// Average-SNR gain constants for the anchor configurations.
inline constexpr double re_weak_2_2_072_mu20 = 137.0;
inline constexpr double re_moderate_4_1_05_mu20 = 63.5;
inline constexpr double re_strong_4_4_05_mu25 = 488.51780594262516;

}  // namespace oracle
