#include "sturm/counting.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>

#include "sturm/error.hpp"

namespace sturm {

namespace {

std::size_t resolve_workers(std::size_t workers) {
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  return workers;
}

// Runs body(begin, end, slot) on `workers` contiguous chunks of [0, total).
template <typename Body>
void run_chunks(std::size_t total, std::size_t workers, Body body) {
  workers = std::min(resolve_workers(workers), std::max<std::size_t>(total, 1));
  if (workers == 1) {
    body(std::size_t{0}, total, std::size_t{0});
    return;
  }
  std::vector<std::thread> threads;
  const std::size_t step = (total + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(total, w * step);
    const std::size_t end = std::min(total, begin + step);
    threads.emplace_back(body, begin, end, w);
  }
  for (auto& t : threads) t.join();
}

void check_sigma(const ExactReal& sigma) {
  if (sigma.is_rational()) {
    throw InvalidArgument("sigma must be irrational, got " + sigma.to_string());
  }
  if (sigma.sign() <= 0 || sigma >= ExactReal(1)) {
    throw InvalidArgument("sigma must lie in (0, 1), got " + sigma.to_string());
  }
}

bool strictly_inside_unit(const ExactReal& x) { return x.sign() > 0 && x < ExactReal(1); }

ExactReal crossing_alpha(const ArrangementLine& x, const ArrangementLine& y) {
  const ExactReal dk = ExactReal(static_cast<std::int64_t>(x.k)) -
                       ExactReal(static_cast<std::int64_t>(y.k));
  return (x.level - y.level) / dk;
}

std::vector<ExactReal> sorted_unique(std::vector<ExactReal> values) {
  std::sort(values.begin(), values.end(),
            [](const ExactReal& x, const ExactReal& y) { return compare(x, y) < 0; });
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace

std::uint64_t euler_phi(std::uint64_t q) {
  if (q == 0) throw InvalidArgument("euler_phi: q must be positive");
  std::uint64_t result = q;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p != 0) continue;
    while (q % p == 0) q /= p;
    result -= result / p;
  }
  if (q > 1) result -= result / q;
  return result;
}

std::vector<std::uint64_t> totient_sieve(std::size_t limit) {
  std::vector<std::uint64_t> phi(limit + 1);
  std::iota(phi.begin(), phi.end(), std::uint64_t{0});
  for (std::size_t p = 2; p <= limit; ++p) {
    if (phi[p] != p) continue;
    for (std::size_t m = p; m <= limit; m += p) phi[m] -= phi[m] / p;
  }
  return phi;
}

BigInt sturmian_total(std::size_t n) {
  const auto phi = totient_sieve(n);
  BigInt total = 1;
  for (std::size_t q = 1; q <= n; ++q) total += BigInt(phi[q]) * BigInt(n + 1 - q);
  return total;
}

std::uint64_t balanced_count(std::size_t n, std::size_t cap, std::size_t workers) {
  if (n > cap) {
    throw CapExceeded("balanced_count: n = " + std::to_string(n) + " exceeds cap " +
                      std::to_string(cap));
  }
  if (n >= 63) throw CapExceeded("balanced_count: n must stay below 63");
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<std::uint64_t> partial(resolve_workers(workers), 0);
  run_chunks(total, workers, [&](std::size_t begin, std::size_t end, std::size_t slot) {
    std::uint64_t count = 0;
    for (std::uint64_t bits = begin; bits < end; ++bits) {
      if (is_balanced(BinaryWord::from_bits(bits, n)).balanced) ++count;
    }
    partial[slot] = count;
  });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

BigInt rotation_face_count(std::size_t order) {
  if (order == 0) throw InvalidArgument("rotation_face_count: order must be at least 1");
  const auto phi = totient_sieve(order);
  const BigInt n(order);
  BigInt f = 2 + n * (n + 1) * (n + 2) / 3;
  for (std::size_t q = 1; q <= order; ++q) f += 2 * BigInt(order - q + 1) * BigInt(phi[q]);
  return f;
}

BigInt rotation_formula(std::size_t order) {
  if (order < 8) throw InvalidArgument("rotation_formula: needs order >= 8");
  return rotation_face_count(order) / 2 - (order % 2 == 0 ? 7 : 8);
}

bool in_rotation_formula_range(const ExactReal& sigma) {
  return ExactReal::rational(3, 8) < sigma && sigma < ExactReal::rational(2, 5);
}

ExactReal ArrangementLine::height(const ExactReal& alpha) const {
  return level - ExactReal(static_cast<std::int64_t>(k)) * alpha;
}

std::vector<ArrangementLine> arrangement_lines(const ExactReal& sigma, std::size_t order) {
  check_sigma(sigma);
  std::vector<ArrangementLine> lines;
  lines.push_back({0, ExactReal(0), LineKind::boundary});
  lines.push_back({0, ExactReal(1), LineKind::boundary});
  lines.push_back({0, ExactReal(1) - sigma, LineKind::shifted});
  for (std::uint64_t k = 1; k <= order; ++k) {
    for (std::uint64_t l = 1; l <= k; ++l) {
      lines.push_back({k, ExactReal(static_cast<std::int64_t>(l)), LineKind::integer});
    }
    for (std::uint64_t l = 1; l <= k + 1; ++l) {
      lines.push_back({k, ExactReal(static_cast<std::int64_t>(l)) - sigma, LineKind::shifted});
    }
  }
  return lines;
}

std::uint64_t arrangement_face_count(const ExactReal& sigma, std::size_t order) {
  const auto lines = arrangement_lines(sigma, order);
  struct Crossing {
    ExactReal alpha, rho;
    std::size_t i, j;
  };
  std::vector<Crossing> crossings;
  std::uint64_t chords = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].kind == LineKind::boundary) continue;
    ++chords;
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[j].kind == LineKind::boundary || lines[i].k == lines[j].k) continue;
      const ExactReal alpha = crossing_alpha(lines[i], lines[j]);
      if (!strictly_inside_unit(alpha)) continue;
      const ExactReal rho = lines[i].height(alpha);
      if (!strictly_inside_unit(rho)) continue;
      crossings.push_back({alpha, rho, i, j});
    }
  }
  std::sort(crossings.begin(), crossings.end(), [](const Crossing& x, const Crossing& y) {
    const auto c = compare(x.alpha, y.alpha);
    return c != 0 ? c < 0 : compare(x.rho, y.rho) < 0;
  });
  std::uint64_t faces = 1 + chords;
  for (std::size_t g = 0; g < crossings.size();) {
    std::set<std::size_t> through;
    std::size_t h = g;
    while (h < crossings.size() && crossings[h].alpha == crossings[g].alpha &&
           crossings[h].rho == crossings[g].rho) {
      through.insert(crossings[h].i);
      through.insert(crossings[h].j);
      ++h;
    }
    faces += through.size() - 1;
    g = h;
  }
  return faces;
}

std::vector<FaceSample> face_samples(const ExactReal& sigma, std::size_t length,
                                     std::size_t workers) {
  if (length == 0) throw InvalidArgument("face_samples: length must be positive");
  const auto lines = arrangement_lines(sigma, length - 1);

  std::vector<ExactReal> cuts{ExactReal(0), ExactReal(1)};
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[i].k == lines[j].k) continue;
      ExactReal alpha = crossing_alpha(lines[i], lines[j]);
      if (strictly_inside_unit(alpha)) cuts.push_back(std::move(alpha));
    }
  }
  cuts = sorted_unique(std::move(cuts));

  const std::size_t strips = cuts.size() - 1;
  std::vector<std::vector<FaceSample>> parts(resolve_workers(workers));
  run_chunks(strips, workers, [&](std::size_t begin, std::size_t end, std::size_t slot) {
    auto& out = parts[slot];
    for (std::size_t s = begin; s < end; ++s) {
      const ExactReal alpha = rational_between(cuts[s], cuts[s + 1]);
      std::vector<std::pair<ExactReal, std::size_t>> heights;
      for (std::size_t i = 0; i < lines.size(); ++i) {
        ExactReal h = lines[i].height(alpha);
        if (h.sign() >= 0 && h <= ExactReal(1)) heights.emplace_back(std::move(h), i);
      }
      std::sort(heights.begin(), heights.end(), [](const auto& x, const auto& y) {
        return compare(x.first, y.first) < 0;
      });
      for (std::size_t c = 0; c + 1 < heights.size(); ++c) {
        const ExactReal rho = (heights[c].first + heights[c + 1].first) / ExactReal(2);
        out.push_back({alpha, rho, rotation_word(alpha, rho, sigma, length), cuts[s],
                       cuts[s + 1], heights[c].second, heights[c + 1].second});
      }
    }
  });
  std::vector<FaceSample> samples;
  for (auto& part : parts) {
    std::move(part.begin(), part.end(), std::back_inserter(samples));
  }
  return samples;
}

std::uint64_t rotation_word_count(const ExactReal& sigma, std::size_t length, std::size_t cap,
                                  std::size_t workers) {
  check_sigma(sigma);
  if (length > cap) {
    throw CapExceeded("rotation_word_count: length " + std::to_string(length) +
                      " exceeds cap " + std::to_string(cap));
  }
  std::unordered_set<BinaryWord> words;
  for (const auto& sample : face_samples(sigma, length, workers)) words.insert(sample.word);
  return words.size();
}

}  // namespace sturm
