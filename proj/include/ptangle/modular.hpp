#pragma once

// Linear systems over Z/NZ for arbitrary N >= 2, solved by diagonalizing with
// unimodular row and column operations (extended-gcd pivoting). The diagonal
// form is enough to count and parametrize every solution; no CRT split of the
// modulus is needed.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ptangle {

using Residue = std::int64_t;

inline Residue mod_reduce(__int128 x, Residue n) {
  __int128 r = x % n;
  if (r < 0) r += n;
  return static_cast<Residue>(r);
}

inline Residue mul_mod(Residue a, Residue b, Residue n) { return mod_reduce(static_cast<__int128>(a) * b, n); }

struct ExtendedGcd {
  std::int64_t g, s, t;  // s*a + t*b = g
};

inline ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Inverse of `a` modulo `n`; requires gcd(a, n) = 1.
inline Residue inverse_mod(Residue a, Residue n) {
  const auto e = extended_gcd(mod_reduce(a, n), n);
  if (e.g != 1) throw std::domain_error("not invertible");
  return mod_reduce(e.s, n);
}

/// The solution set of A x = b (mod N) as x0 + sum_j k_j * g_j, 0 <= k_j < order_j.
struct AffineSolutionSet {
  Residue modulus = 2;
  std::size_t unknowns = 0;
  bool consistent = true;
  std::vector<Residue> particular;
  std::vector<std::vector<Residue>> generators;
  std::vector<Residue> orders;

  /// Exact number of solutions. Throws std::overflow_error past 2^64 - 1.
  std::uint64_t count() const {
    if (!consistent) return 0;
    std::uint64_t c = 1;
    for (Residue o : orders) {
      if (__builtin_mul_overflow(c, static_cast<std::uint64_t>(o), &c))
        throw std::overflow_error("solution count exceeds 64 bits");
    }
    return c;
  }
};

class ModularSystem {
 public:
  ModularSystem(std::size_t unknowns, Residue modulus) : n_(unknowns), modulus_(modulus) {
    if (modulus < 2) throw std::invalid_argument("modulus must be at least 2");
  }

  /// Append the equation sum_i coeffs[i] * x_i = rhs.
  void add_equation(std::vector<Residue> coeffs, Residue rhs) {
    for (auto& c : coeffs) c = mod_reduce(c, modulus_);
    coeffs.resize(n_, 0);
    rows_.push_back(std::move(coeffs));
    rhs_.push_back(mod_reduce(rhs, modulus_));
  }

  AffineSolutionSet solve() const {
    const Residue N = modulus_;
    auto A = rows_;
    auto b = rhs_;
    const std::size_t m = A.size();
    std::vector<std::vector<Residue>> V(n_, std::vector<Residue>(n_, 0));
    for (std::size_t i = 0; i < n_; ++i) V[i][i] = 1;

    auto row_combine = [&](std::size_t r1, std::size_t r2, Residue s, Residue t, Residue u, Residue w) {
      // (r1, r2) <- (s*r1 + t*r2, u*r1 + w*r2)
      for (std::size_t j = 0; j < n_; ++j) {
        const Residue x = A[r1][j], y = A[r2][j];
        A[r1][j] = mod_reduce(static_cast<__int128>(s) * x + static_cast<__int128>(t) * y, N);
        A[r2][j] = mod_reduce(static_cast<__int128>(u) * x + static_cast<__int128>(w) * y, N);
      }
      const Residue x = b[r1], y = b[r2];
      b[r1] = mod_reduce(static_cast<__int128>(s) * x + static_cast<__int128>(t) * y, N);
      b[r2] = mod_reduce(static_cast<__int128>(u) * x + static_cast<__int128>(w) * y, N);
    };
    auto col_combine = [&](std::size_t c1, std::size_t c2, Residue s, Residue t, Residue u, Residue w) {
      for (std::size_t i = 0; i < m; ++i) {
        const Residue x = A[i][c1], y = A[i][c2];
        A[i][c1] = mod_reduce(static_cast<__int128>(s) * x + static_cast<__int128>(t) * y, N);
        A[i][c2] = mod_reduce(static_cast<__int128>(u) * x + static_cast<__int128>(w) * y, N);
      }
      for (std::size_t i = 0; i < n_; ++i) {
        const Residue x = V[i][c1], y = V[i][c2];
        V[i][c1] = mod_reduce(static_cast<__int128>(s) * x + static_cast<__int128>(t) * y, N);
        V[i][c2] = mod_reduce(static_cast<__int128>(u) * x + static_cast<__int128>(w) * y, N);
      }
    };
    // Unimodular 2x2 step that moves gcd(a, b) into the first position and zero into the second.
    auto gcd_step = [&](Residue a, Residue c) {
      struct Step {
        Residue s, t, u, w;
      };
      if (c % a == 0) return Step{1, 0, -(c / a), 1};
      const auto e = extended_gcd(a, c);
      return Step{e.s, e.t, -(c / e.g), a / e.g};
    };

    std::size_t rank = 0;
    for (; rank < std::min(m, n_); ++rank) {
      // smallest nonzero entry of the trailing block
      std::size_t pr = m, pc = n_;
      Residue best = 0;
      for (std::size_t i = rank; i < m; ++i)
        for (std::size_t j = rank; j < n_; ++j)
          if (A[i][j] != 0 && (best == 0 || A[i][j] < best)) {
            best = A[i][j];
            pr = i;
            pc = j;
          }
      if (best == 0) break;
      std::swap(A[rank], A[pr]);
      std::swap(b[rank], b[pr]);
      if (pc != rank) {
        for (auto& row : A) std::swap(row[rank], row[pc]);
        for (auto& row : V) std::swap(row[rank], row[pc]);
      }
      const std::size_t t = rank;
      bool dirty = true;
      while (dirty) {
        dirty = false;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (A[i][t] == 0) continue;
          const auto st = gcd_step(A[t][t], A[i][t]);
          row_combine(t, i, st.s, st.t, st.u, st.w);
        }
        for (std::size_t j = t + 1; j < n_; ++j) {
          if (A[t][j] == 0) continue;
          const auto st = gcd_step(A[t][t], A[t][j]);
          col_combine(t, j, st.s, st.t, st.u, st.w);
        }
        for (std::size_t i = t + 1; i < m; ++i)
          if (A[i][t] != 0) dirty = true;
      }
    }

    AffineSolutionSet out;
    out.modulus = N;
    out.unknowns = n_;
    for (std::size_t i = rank; i < m; ++i)
      if (b[i] != 0) {
        out.consistent = false;
        return out;
      }

    std::vector<Residue> y0(n_, 0);
    std::vector<std::pair<std::size_t, Residue>> free_dirs;  // column, step
    for (std::size_t j = 0; j < n_; ++j) {
      const Residue d = j < rank ? A[j][j] : 0;
      const Residue c = j < rank ? b[j] : 0;
      const Residue g = std::gcd(d, N);
      if (c % g != 0) {
        out.consistent = false;
        return out;
      }
      if (d != 0) {
        const Residue reduced = N / g;
        y0[j] = reduced == 1 ? 0 : mul_mod(c / g, inverse_mod(d / g, reduced), reduced);
      }
      if (g > 1) free_dirs.emplace_back(j, N / g);
    }

    auto apply_v = [&](const std::vector<Residue>& y) {
      std::vector<Residue> x(n_, 0);
      for (std::size_t i = 0; i < n_; ++i) {
        __int128 acc = 0;
        for (std::size_t j = 0; j < n_; ++j) acc += static_cast<__int128>(V[i][j]) * y[j];
        x[i] = mod_reduce(acc, N);
      }
      return x;
    };
    out.particular = apply_v(y0);
    for (const auto& [j, step] : free_dirs) {
      std::vector<Residue> y(n_, 0);
      y[j] = step;
      out.generators.push_back(apply_v(y));
      out.orders.push_back(N / step);
    }
    return out;
  }

 private:
  std::size_t n_;
  Residue modulus_;
  std::vector<std::vector<Residue>> rows_;
  std::vector<Residue> rhs_;
};

}  // namespace ptangle
