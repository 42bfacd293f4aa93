#include "forge/evaluator.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

#include "forge/errors.hpp"
#include "forge/gf2.hpp"

namespace forge {

namespace {

using cd = std::complex<double>;
constexpr double kQuarter = std::numbers::pi / 4.0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::int64_t config_count(int bits) {
  return bits <= 62 ? (std::int64_t{1} << bits) : -1;
}

}  // namespace

std::string method_name(ZMethod m) {
  switch (m) {
    case ZMethod::BruteModel: return "brute-model";
    case ZMethod::BruteIsing: return "brute-ising";
    case ZMethod::Constrained: return "constrained";
    case ZMethod::Transfer: return "transfer";
  }
  return "unknown";
}

ZValue ZValue::zero() {
  ZValue z;
  z.is_zero = true;
  return z;
}

ZValue ZValue::from_complex(cd c) {
  if (c.real() == 0.0 && c.imag() == 0.0) return zero();
  ZValue z;
  z.log_magnitude = std::log(std::abs(c));
  z.phase = std::arg(c);
  return z;
}

ZValue ZValue::from_log(double log_mag, double ph) {
  ZValue z;
  z.log_magnitude = log_mag;
  z.phase = wrap_angle(ph);
  return z;
}

cd ZValue::as_complex() const {
  if (is_zero) return {0.0, 0.0};
  return std::exp(log_magnitude) * cd{std::cos(phase), std::sin(phase)};
}

ZValue ZValue::scaled_two_pow(int k) const {
  if (is_zero) return *this;
  return from_log(log_magnitude + k * std::numbers::ln2, phase);
}

ZValue ZValue::times(const Prefactor& p) const {
  if (is_zero) return *this;
  return from_log(log_magnitude + p.log_magnitude, phase + p.phase);
}

// ---------------------------------------------------------------------------
// Mixed-radix enumeration over raw model configurations.

ZReport exact_z_model(const SpinModel& model, const EvalOptions& opts) {
  Timer timer;
  model.validate();
  const int n = static_cast<int>(model.sites.size());
  std::vector<int> arity(n);
  std::int64_t total = 1;
  const std::int64_t cap = std::int64_t{1} << std::min(opts.max_free_spins, 62);
  for (int i = 0; i < n; ++i) {
    arity[i] = site_arity(model.sites[i].kind);
    if (total > cap / arity[i]) throw CapExceeded("model configuration count exceeds cap");
    total *= arity[i];
  }

  std::vector<int> q(n, 0);
  cd sum = 0.0;
  for (std::int64_t idx = 0; idx < total; ++idx) {
    cd h = 0.0;
    for (const Term& t : model.terms) {
      if (t.is_delta) {
        if (q[t.sites[0]] == q[t.sites[1]]) h += t.coupling.value();
      } else {
        int sign = 1;
        for (int s : t.sites)
          if (q[s] != 0) sign = -sign;
        h += static_cast<double>(sign) * t.coupling.value();
      }
    }
    sum += std::exp(h);
    for (int i = 0; i < n; ++i) {
      if (++q[i] < arity[i]) break;
      q[i] = 0;
    }
  }

  ZReport r;
  r.value = ZValue::from_complex(sum);
  r.n_configs = total;
  r.method = ZMethod::BruteModel;
  r.elapsed_ms = timer.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Gray-code enumeration over free spins of an Ising graph.

namespace {

struct FoldedGraph {
  int n_free = 0;
  std::vector<cd> h;                    // per free vertex
  std::vector<std::vector<int>> adj;    // free-free adjacency (free indices)
  std::vector<std::pair<int, int>> edges;
  Prefactor constant = Prefactor::identity();
};

FoldedGraph fold_pinned(const IsingGraph& g) {
  FoldedGraph f;
  const int n = static_cast<int>(g.vertices.size());
  std::vector<int> free_index(n, -1);
  for (int v = 0; v < n; ++v) {
    if (g.vertices[v].pinned == 0) {
      free_index[v] = f.n_free++;
      f.h.push_back(g.vertices[v].field.value());
    } else {
      ComplexField fv = g.vertices[v].field;
      if (g.vertices[v].pinned < 0) fv = fv.scaled(-1, 1);
      f.constant.times_exp(fv);
    }
  }
  f.adj.resize(f.n_free);
  for (auto [u, v] : g.edges()) {
    const int su = g.vertices[u].pinned;
    const int sv = g.vertices[v].pinned;
    if (su != 0 && sv != 0) {
      f.constant.times_exp(ComplexField::quarter(su * sv));
    } else if (su != 0) {
      f.h[free_index[v]] += cd{0.0, kQuarter * su};
    } else if (sv != 0) {
      f.h[free_index[u]] += cd{0.0, kQuarter * sv};
    } else {
      const int a = free_index[u];
      const int b = free_index[v];
      f.adj[a].push_back(b);
      f.adj[b].push_back(a);
      f.edges.emplace_back(a, b);
    }
  }
  return f;
}

cd hamiltonian_at(const FoldedGraph& f, const std::vector<int>& spin) {
  cd h = 0.0;
  for (int v = 0; v < f.n_free; ++v) h += static_cast<double>(spin[v]) * f.h[v];
  int bond = 0;
  for (auto [u, v] : f.edges) bond += spin[u] * spin[v];
  h += cd{0.0, kQuarter * bond};
  return h;
}

cd eval_block(const FoldedGraph& f, std::uint64_t start, std::uint64_t end) {
  std::vector<int> spin(f.n_free, 1);
  const std::uint64_t gray = start ^ (start >> 1);
  for (int v = 0; v < f.n_free; ++v)
    if ((gray >> v) & 1u) spin[v] = -1;
  cd h = hamiltonian_at(f, spin);
  cd acc = 0.0;
  for (std::uint64_t idx = start;;) {
    acc += std::exp(h);
    if (++idx == end) break;
    const int b = std::countr_zero(idx);
    spin[b] = -spin[b];
    int ns = 0;
    for (int u : f.adj[b]) ns += spin[u];
    h += 2.0 * static_cast<double>(spin[b]) * (f.h[b] + cd{0.0, kQuarter * ns});
    if ((idx & 0xFFFu) == 0u) h = hamiltonian_at(f, spin);
  }
  return acc;
}

}  // namespace

ZReport exact_z_ising(const IsingGraph& g, const EvalOptions& opts) {
  Timer timer;
  validate(g);
  FoldedGraph f = fold_pinned(g);
  if (f.n_free > std::min(opts.max_free_spins, 62))
    throw CapExceeded("free spin count exceeds enumeration cap");

  const std::uint64_t total = std::uint64_t{1} << f.n_free;
  constexpr std::uint64_t kBlock = std::uint64_t{1} << 16;
  const std::uint64_t n_blocks = (total + kBlock - 1) / kBlock;
  std::vector<cd> block_sums(n_blocks);

  const int n_threads =
      static_cast<int>(std::min<std::uint64_t>(std::max(opts.threads, 1), n_blocks));
  if (n_threads <= 1) {
    for (std::uint64_t b = 0; b < n_blocks; ++b)
      block_sums[b] = eval_block(f, b * kBlock, std::min(total, (b + 1) * kBlock));
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (std::uint64_t b; (b = next.fetch_add(1)) < n_blocks;)
          block_sums[b] = eval_block(f, b * kBlock, std::min(total, (b + 1) * kBlock));
      });
    }
    for (auto& th : pool) th.join();
  }

  cd sum = 0.0;
  for (const cd& s : block_sums) sum += s;

  ZReport r;
  r.value = ZValue::from_complex(sum).times(f.constant);
  r.n_configs = static_cast<std::int64_t>(total);
  r.method = ZMethod::BruteIsing;
  r.elapsed_ms = timer.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Enumeration over the GF(2) solution set of a constraint system.

ZReport exact_z_constrained(const ConstraintSystem& sys, const EvalOptions& opts) {
  Timer timer;
  const int m = static_cast<int>(sys.variable_fields.size());
  BitMatrix rows(static_cast<int>(sys.constraints.size()), m);
  for (std::size_t r = 0; r < sys.constraints.size(); ++r) {
    for (int t : sys.constraints[r]) {
      if (t < 0 || t >= m) throw PreconditionError("constraint references unknown variable");
      rows.set(static_cast<int>(r), t, true);
    }
  }
  std::vector<BitVec> basis = gf2_right_null_space(rows);
  const int fdim = static_cast<int>(basis.size());
  if (fdim > std::min(opts.max_free_spins, 62))
    throw CapExceeded("constrained solution space exceeds enumeration cap");

  std::vector<cd> h(m);
  for (int t = 0; t < m; ++t) h[t] = sys.variable_fields[t].value();
  std::vector<std::vector<int>> basis_members(fdim);
  for (int k = 0; k < fdim; ++k) basis_members[k] = basis[k].ones();

  std::vector<int> sign(m, 1);
  cd ham = 0.0;
  for (int t = 0; t < m; ++t) ham += h[t];
  auto fresh = [&] {
    cd v = 0.0;
    for (int t = 0; t < m; ++t) v += static_cast<double>(sign[t]) * h[t];
    return v;
  };

  const std::uint64_t total = std::uint64_t{1} << fdim;
  cd sum = 0.0;
  for (std::uint64_t idx = 0;;) {
    sum += std::exp(ham);
    if (++idx == total) break;
    const int k = std::countr_zero(idx);
    for (int t : basis_members[k]) {
      ham -= 2.0 * static_cast<double>(sign[t]) * h[t];
      sign[t] = -sign[t];
    }
    if ((idx & 0xFFFu) == 0u) ham = fresh();
  }

  ZReport r;
  r.value = ZValue::from_complex(sum).scaled_two_pow(sys.overcount_exponent);
  r.n_configs = static_cast<std::int64_t>(total);
  r.method = ZMethod::Constrained;
  r.elapsed_ms = timer.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Transfer contraction of a rectangular grid.

ZReport transfer_z(const GridIsing& grid, const EvalOptions& opts) {
  (void)opts;
  Timer timer;
  if (grid.pinned_count() > 0)
    throw PreconditionError("transfer contraction requires a pin-free grid");

  // Contract along the shorter dimension so the state vector stays small.
  const bool flip = grid.width > grid.height;
  const int w = flip ? grid.height : grid.width;
  const int rows = flip ? grid.width : grid.height;
  if (w > 24) throw CapExceeded("transfer state width exceeds 24");
  auto field_at = [&](int x, int y) {
    return flip ? grid.at(y, x).value() : grid.at(x, y).value();
  };

  const std::size_t dim = std::size_t{1} << w;
  const cd ep = std::exp(cd{0.0, kQuarter});
  const cd em = std::exp(cd{0.0, -kQuarter});

  std::vector<cd> psi(dim), diag(dim);
  auto fill_diag = [&](int y) {
    for (std::size_t s = 0; s < dim; ++s) {
      cd h = 0.0;
      for (int x = 0; x < w; ++x) {
        const int sx = (s >> x) & 1u ? -1 : 1;
        h += static_cast<double>(sx) * field_at(x, y);
        if (x + 1 < w) {
          const int sn = (s >> (x + 1)) & 1u ? -1 : 1;
          h += cd{0.0, kQuarter * sx * sn};
        }
      }
      diag[s] = std::exp(h);
    }
  };

  fill_diag(0);
  psi = diag;
  for (int y = 1; y < rows; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t bit = std::size_t{1} << x;
      for (std::size_t s = 0; s < dim; ++s) {
        if (s & bit) continue;
        const cd a = psi[s];
        const cd b = psi[s | bit];
        psi[s] = ep * a + em * b;
        psi[s | bit] = em * a + ep * b;
      }
    }
    fill_diag(y);
    for (std::size_t s = 0; s < dim; ++s) psi[s] *= diag[s];
  }

  cd sum = 0.0;
  for (const cd& v : psi) sum += v;

  ZReport r;
  r.value = ZValue::from_complex(sum);
  r.n_configs = config_count(w * rows);
  r.method = ZMethod::Transfer;
  r.elapsed_ms = timer.ms();
  return r;
}

// ---------------------------------------------------------------------------

EquivalenceVerdict check_equivalence(const ZValue& z_source, const ZValue& z_target,
                                     const Prefactor& prefactor_ratio, double tol) {
  const ZValue rb = z_target.times(prefactor_ratio);
  if (z_source.is_zero && rb.is_zero) return {true, 0.0};

  const double la = z_source.is_zero ? -std::numeric_limits<double>::infinity()
                                     : z_source.log_magnitude;
  const double lb = rb.is_zero ? -std::numeric_limits<double>::infinity() : rb.log_magnitude;
  const double m = std::max(la, lb);
  const cd da = z_source.is_zero
                    ? cd{0.0, 0.0}
                    : std::exp(la - m) * cd{std::cos(z_source.phase), std::sin(z_source.phase)};
  const cd db = rb.is_zero ? cd{0.0, 0.0}
                           : std::exp(lb - m) * cd{std::cos(rb.phase), std::sin(rb.phase)};
  const double diff = std::abs(da - db);
  const double scale = std::max(std::abs(da), std::abs(db));
  const double rel = diff / scale;

  bool pass = rel <= tol;
  if (!pass) {
    // Absolute fallback for values that are themselves ~0.
    if (diff == 0.0 || std::log(diff) + m <= std::log(tol)) pass = true;
  }
  return {pass, rel};
}

}  // namespace forge
