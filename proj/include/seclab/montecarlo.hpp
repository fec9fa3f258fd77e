#pragma once

#include <cstdint>
#include <vector>

#include "seclab/channel.hpp"

namespace seclab::mc {

// How the eavesdropper SNR is formed per trial.
enum class EveModel {
    mismatch_sinr,     // degraded signal-to-interference-plus-noise ratio
    exponential_mean,  // exponential surrogate with the analytic mean
};

struct McConfig {
    long trials = 1000000;
    std::uint64_t seed = 20260816ULL;
    int workers = 0;   // 0 = hardware concurrency
    long chunk = 65536;  // trials per deterministic batch
    EveModel eve_model = EveModel::mismatch_sinr;
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    long trials = 0;
};

// Average secrecy capacity estimate, bits/s/Hz.  The result is a function
// of (seed, trials, chunk) only: batches have independent seeds and the
// reduction is ordered, so worker count never changes the value.
Estimate run_asc_mc(const channel::SystemParams& sp, const McConfig& cfg);

// Mean eavesdropper SNR after mismatch degradation, estimated from single
// pair draws (no selection).  Linear SNR units.
Estimate run_eve_snr_mc(const channel::SystemParams& sp, const McConfig& cfg);

enum class Modulation { qpsk };

struct SignalMcResult {
    double useful_fraction = 0.0;    // matched-component share of rx power
    double sir = 0.0;                // matched vs interference power ratio
    double predicted_fraction = 0.0; // |w0(delta_alpha)|^2
    long symbols = 0;
    long block_len = 0;
};

// Modulate random symbols, transform with a fixed order, invert with the
// mismatched guess, and measure how much power stays on the sent signal.
SignalMcResult run_signal_mc(const channel::SystemParams& sp, long n_symbols,
                             Modulation mod, const McConfig& cfg);

// One-sample Kolmogorov-Smirnov statistic against the unit-rate exponential.
// Requires at least 1e4 samples.
double ks_exponential_check(const std::vector<double>& samples);

struct ChiSquareResult {
    double stat = 0.0;
    double critical_1pc = 0.0;
    int cells = 0;
    long trials = 0;
    bool pass = false;
};

// 20x20 histogram of (selected main SNR, paired eavesdropper SNR) with
// equal-probability marginal bins, tested against the analytic joint law.
ChiSquareResult chi_square_joint(const channel::SystemParams& sp,
                                 const McConfig& cfg);

// n draws of the normalized per-branch eavesdropper power |h_E|^2/sigma_E^2.
std::vector<double> sample_eve_power(const channel::SystemParams& sp, long n,
                                     std::uint64_t seed);

}  // namespace seclab::mc
