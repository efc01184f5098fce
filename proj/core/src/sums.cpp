#include "resonance/sums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "resonance/errors.hpp"

namespace resonance::sums {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Fractional part of a * b, keeping the rounding error of the product.
double frac_product(double a, double b) {
  const double p = a * b;
  const double err = std::fma(a, b, -p);
  double f = (p - std::floor(p)) + err;
  f -= std::floor(f);
  return f;
}

struct Kahan {
  cplx sum;
  cplx comp;
  void add(cplx x) {
    const cplx y = x - comp;
    const cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

struct Chunk {
  cplx value;
  double abs_sum = 0.0;
};

cplx tree_sum(std::vector<Chunk>& chunks, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return chunks[lo].value;
  const std::size_t mid = lo + (hi - lo) / 2;
  return tree_sum(chunks, lo, mid) + tree_sum(chunks, mid, hi);
}

}  // namespace

cplx unit_phase(double x) {
  x -= std::floor(x);
  return std::polar(1.0, kTwoPi * x);
}

double twist_phase(Twist twist, double M, std::int64_t d, int n, std::int64_t m) {
  const double nd = n;
  switch (twist) {
    case Twist::none:
      return 0.0;
    case Twist::linear: {
      const double alpha = std::pow(static_cast<double>(d), 1.0 / nd) / std::pow(M, 1.0 - 1.0 / nd);
      return frac_product(alpha, static_cast<double>(m));
    }
    case Twist::nonlinear: {
      const double root = nd * std::pow(static_cast<double>(d) * static_cast<double>(m), 1.0 / nd);
      return root - std::floor(root);
    }
  }
  return 0.0;
}

SumResult exp_sum(const SumSpec& spec, int threads) {
  if (spec.table == nullptr) throw ConfigError("exp_sum: no coefficient table");
  if (!(spec.M > 0.0) || !(spec.Delta >= 0.0)) throw DomainError("exp_sum: need M > 0 and Delta >= 0");
  if (spec.d < 1) throw DomainError("exp_sum: d must be positive");
  const auto& table = *spec.table;
  const auto first = static_cast<std::int64_t>(std::ceil(spec.M));
  const auto last = static_cast<std::int64_t>(std::floor(spec.M + spec.Delta));
  if (last > static_cast<std::int64_t>(table.n_max())) {
    throw RangeError("exp_sum: window ends at " + std::to_string(last) + " beyond the table size " +
                     std::to_string(table.n_max()));
  }
  if (spec.weight) {
    const auto& w = *spec.weight;
    if (std::abs(w.M - spec.M) > 1e-9 * spec.M || std::abs(w.Delta - spec.Delta) > 1e-9 * spec.Delta) {
      throw ConfigError("exp_sum: weight window does not match (M, Delta)");
    }
  }
  SumResult out;
  if (last < first) return out;

  const std::int64_t count = last - first + 1;
  const std::int64_t n_chunks = (count + kChunk - 1) / kChunk;
  std::vector<Chunk> chunks(static_cast<std::size_t>(n_chunks));
  const int n = table.n_rank();
  const double nd = n;
  const double alpha = std::pow(static_cast<double>(spec.d), 1.0 / nd) / std::pow(spec.M, 1.0 - 1.0 / nd);
  const double droot = nd * std::pow(static_cast<double>(spec.d), 1.0 / nd);

  auto run_chunk = [&](std::int64_t c) {
    const std::int64_t lo = first + c * kChunk;
    const std::int64_t hi = std::min(last, lo + kChunk - 1);
    Kahan acc;
    double abs_acc = 0.0;
    for (std::int64_t m = lo; m <= hi; ++m) {
      double amp = table(static_cast<std::uint64_t>(m));
      if (spec.weight) amp *= weights::eval_weight(*spec.weight, static_cast<double>(m));
      if (amp == 0.0) continue;
      double phase = 0.0;
      if (spec.twist == Twist::linear) {
        phase = frac_product(alpha, static_cast<double>(m));
      } else if (spec.twist == Twist::nonlinear) {
        phase = droot * std::pow(static_cast<double>(m), 1.0 / nd);
      }
      acc.add(amp * unit_phase(phase));
      abs_acc += std::abs(amp);
    }
    chunks[static_cast<std::size_t>(c)] = {acc.sum, abs_acc};
  };

  const int workers = static_cast<int>(std::clamp<std::int64_t>(threads, 1, n_chunks));
  if (workers == 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::int64_t c = w; c < n_chunks; c += workers) run_chunk(c);
      });
    }
    for (auto& t : pool) t.join();
  }

  out.value = tree_sum(chunks, 0, chunks.size());
  out.terms = count;
  for (const auto& c : chunks) out.abs_sum += c.abs_sum;
  // Kahan within chunks (2 eps) plus the depth of the reduction tree, with
  // one more eps for the phase evaluation.
  const double depth = std::ceil(std::log2(static_cast<double>(n_chunks))) + 1.0;
  out.accumulation_error = (3.0 + depth) * kEps * out.abs_sum;
  return out;
}

cplx geometric_sum_direct(std::int64_t Delta, double theta) {
  // Extended precision: per-term rounding of the phase would otherwise grow
  // linearly with Delta.
  const long double turn = 2.0L * std::numbers::pi_v<long double>;
  long double re = 0.0L, im = 0.0L, cre = 0.0L, cim = 0.0L;
  for (std::int64_t h = 0; h < Delta; ++h) {
    const long double x = turn * static_cast<long double>(frac_product(theta, static_cast<double>(h)));
    const long double yr = std::cos(x) - cre, yi = std::sin(x) - cim;
    const long double tr = re + yr, ti = im + yi;
    cre = (tr - re) - yr;
    cim = (ti - im) - yi;
    re = tr;
    im = ti;
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

cplx geometric_sum(std::int64_t Delta, double theta) {
  if (Delta < 1) throw DomainError("geometric_sum: Delta must be at least 1");
  const double r = theta - std::round(theta);
  if (std::abs(1.0 - unit_phase(r)) <= 1e-9) return geometric_sum_direct(Delta, r);
  // sin(pi r Delta) / sin(pi r) * e(r (Delta - 1) / 2); the products are
  // reduced mod 2 so that large Delta keeps its phase.
  const double half_turns = 2.0 * frac_product(0.5 * r, static_cast<double>(Delta));
  const double num = std::sin(std::numbers::pi * half_turns);
  const double den = std::sin(std::numbers::pi * r);
  const double rot = frac_product(0.5 * r, static_cast<double>(Delta - 1));
  return (num / den) * unit_phase(rot);
}

std::int64_t window_span(double M, int n) {
  return static_cast<std::int64_t>(std::ceil(std::pow(M, 1.0 - 0.5 / static_cast<double>(n))));
}

std::vector<cplx> windowed_plain_sums(const forms::CoefficientTable& table, double M,
                                      std::int64_t Delta, std::int64_t twist_d) {
  if (!(M > 0.0) || Delta < 1) throw DomainError("windowed_plain_sums: need M > 0 and Delta >= 1");
  if (twist_d < 0) throw DomainError("windowed_plain_sums: twist_d must be >= 0");
  const int n = table.n_rank();
  const std::int64_t span = window_span(M, n);
  const auto first = static_cast<std::int64_t>(std::ceil(M));
  const std::int64_t last_needed = first + span + Delta - 1;
  if (last_needed > static_cast<std::int64_t>(table.n_max())) {
    throw RangeError("windowed_plain_sums: needs coefficients up to " + std::to_string(last_needed) +
                     ", table has " + std::to_string(table.n_max()));
  }
  const Twist twist = twist_d == 0 ? Twist::none : Twist::linear;
  auto term = [&](std::int64_t m) {
    const double a = table(static_cast<std::uint64_t>(m));
    if (twist == Twist::none) return cplx(a, 0.0);
    return a * unit_phase(twist_phase(twist, M, twist_d, n, m));
  };
  auto direct = [&](std::int64_t t) {
    Kahan acc;
    for (std::int64_t m = t; m < t + Delta; ++m) acc.add(term(m));
    return acc.sum;
  };

  std::vector<cplx> out(static_cast<std::size_t>(span + 1));
  // Recompute from scratch every so often so that drift stays bounded.
  constexpr std::int64_t kRefresh = 4096;
  Kahan window;
  for (std::int64_t k = 0; k <= span; ++k) {
    const std::int64_t t = first + k;
    if (k % kRefresh == 0) {
      window = {direct(t), 0.0};
    } else {
      window.add(term(t + Delta - 1));
      window.add(-term(t - 1));
    }
    out[static_cast<std::size_t>(k)] = window.sum;
  }
  return out;
}

}  // namespace resonance::sums
