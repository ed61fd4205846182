#include "tfcop/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <istream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>

#include "tfcop/parallel.hpp"

namespace tfcop {

double SampleBatch::diagonal_fraction() const {
    if (on_diagonal.empty()) return 0.0;
    std::size_t k = 0;
    for (auto b : on_diagonal) k += b;
    return static_cast<double>(k) / static_cast<double>(on_diagonal.size());
}

double uniform01(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 on seed + (index+1) * golden-ratio increment.
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

namespace {

double invert_conditional(const TransformedCopula& tf, double u, double p) {
    // F(.|u) is increasing with the diagonal atom already carved out by the
    // caller, so bisection on either side of u is safe.
    double lo, hi;
    if (p < tf.conditional_lower(u)) {
        lo = 0.0;
        hi = u;
    } else {
        lo = u;
        hi = 1.0;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f = tf.conditional_cdf(u, mid);
        if (std::fabs(f - p) < 1e-10) return mid;
        if (f < p)
            lo = mid;
        else
            hi = mid;
    }
    // The bracket has collapsed. Either the conditional has an atom here
    // (p falls inside its riser) or something is genuinely wrong.
    const double mid = 0.5 * (lo + hi);
    const double below = tf.conditional_cdf(u, std::max(0.0, mid - 1e-9));
    const double above = tf.conditional_cdf(u, std::min(1.0, mid + 1e-9));
    if (p >= below - 1e-8 && p <= above + 1e-8) return mid;
    throw std::runtime_error("sample: conditional inversion failed at u=" + std::to_string(u) +
                             ", p=" + std::to_string(p));
}

} // namespace

SampleBatch sample(const TransformedCopula& tf, std::size_t n, std::uint64_t seed) {
    SampleBatch b;
    b.seed = seed;
    b.u.resize(n);
    b.v.resize(n);
    b.on_diagonal.assign(n, 0);
    std::mutex failure_mu;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    parallel_for(n, [&](std::size_t i) {
        if (failed.load(std::memory_order_relaxed)) return;
        try {
            const double u = std::clamp(uniform01(seed, 2 * i), 1e-12, 1.0 - 1e-12);
            const double p = uniform01(seed, 2 * i + 1);
            b.u[i] = u;
            const double flo = tf.conditional_lower(u);
            const double fhi = tf.conditional_upper(u);
            if (p >= flo && p <= fhi) {
                b.v[i] = u;
                b.on_diagonal[i] = 1;
            } else {
                b.v[i] = invert_conditional(tf, u, p);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
        }
    });
    if (failure) std::rethrow_exception(failure);
    return b;
}

KsStatistics marginal_ks(const SampleBatch& batch) {
    const std::size_t n = batch.size();
    if (n < 100) throw std::invalid_argument("marginal_ks: needs at least 100 samples");
    const auto one_margin = [n](std::vector<double> x) {
        std::sort(x.begin(), x.end());
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double hi = static_cast<double>(i + 1) / static_cast<double>(n) - x[i];
            const double lo = x[i] - static_cast<double>(i) / static_cast<double>(n);
            d = std::max({d, hi, lo});
        }
        return d;
    };
    KsStatistics ks;
    ks.u_stat = one_margin(batch.u);
    ks.v_stat = one_margin(batch.v);
    ks.band = 1.95 / std::sqrt(static_cast<double>(n));
    return ks;
}

namespace {

void put_double(std::ostream& os, double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    os.write(buf, res.ptr - buf);
}

} // namespace

void write_csv(const SampleBatch& batch, std::ostream& os) {
    os << "u,v,on_diagonal\n";
    for (std::size_t i = 0; i < batch.size(); ++i) {
        put_double(os, batch.u[i]);
        os.put(',');
        put_double(os, batch.v[i]);
        os.put(',');
        os << int(batch.on_diagonal[i]);
        os.put('\n');
    }
}

SampleBatch read_csv(std::istream& is) {
    SampleBatch b;
    std::string line;
    if (!std::getline(is, line) || line != "u,v,on_diagonal")
        throw std::invalid_argument("read_csv: missing header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const char* p = line.data();
        const char* end = p + line.size();
        double u = 0.0, v = 0.0;
        int flag = 0;
        auto r1 = std::from_chars(p, end, u);
        if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != ',')
            throw std::invalid_argument("read_csv: bad row: " + line);
        auto r2 = std::from_chars(r1.ptr + 1, end, v);
        if (r2.ec != std::errc{} || r2.ptr == end || *r2.ptr != ',')
            throw std::invalid_argument("read_csv: bad row: " + line);
        auto r3 = std::from_chars(r2.ptr + 1, end, flag);
        if (r3.ec != std::errc{})
            throw std::invalid_argument("read_csv: bad row: " + line);
        b.u.push_back(u);
        b.v.push_back(v);
        b.on_diagonal.push_back(static_cast<std::uint8_t>(flag));
    }
    return b;
}

} // namespace tfcop
