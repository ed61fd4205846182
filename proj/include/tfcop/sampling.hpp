#ifndef TFCOP_SAMPLING_HPP
#define TFCOP_SAMPLING_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "tfcop/transform.hpp"

namespace tfcop {

// A generated sample cloud. `on_diagonal[i]` marks draws whose conditional
// uniform landed inside the diagonal atom (so v[i] == u[i] exactly).
struct SampleBatch {
    std::vector<double> u, v;
    std::vector<std::uint8_t> on_diagonal;
    std::uint64_t seed = 0;

    std::size_t size() const { return u.size(); }
    double diagonal_fraction() const;
};

// Counter-based uniform: draw `index` of the stream for `seed`. Reproducible
// across platforms and thread counts.
double uniform01(std::uint64_t seed, std::uint64_t index);

// Conditional-inversion sampler. Deterministic given (seed, n): draw i uses
// stream entries 2i and 2i+1. Throws std::runtime_error when the conditional
// inversion fails to bracket.
SampleBatch sample(const TransformedCopula& tf, std::size_t n, std::uint64_t seed);

struct KsStatistics {
    double u_stat = 0.0;
    double v_stat = 0.0;
    double band = 0.0; // 1.95 / sqrt(n)
    bool within_band() const { return u_stat <= band && v_stat <= band; }
};

// One-sample Kolmogorov-Smirnov distance of each margin from uniform.
// Requires n >= 100 so the band means something.
KsStatistics marginal_ks(const SampleBatch& batch);

// CSV with header "u,v,on_diagonal"; doubles use shortest round-trip form,
// so a reload reproduces the batch bit for bit.
void write_csv(const SampleBatch& batch, std::ostream& os);
SampleBatch read_csv(std::istream& is);

} // namespace tfcop

#endif
