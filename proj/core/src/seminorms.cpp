#include "hsbmo/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hsbmo/approx.hpp"
#include "hsbmo/generators.hpp"
#include "hsbmo/parallel.hpp"

namespace hsbmo {

namespace {

// Max L^p oscillation over all cubes of one dyadic side length, with the
// corner ranging over every lattice node (periodic wrap). Running the sweep
// over all positions, not just the corner-aligned family, is what makes
// bmo_norm exactly invariant under lattice translations.
//
// Fast paths: real scalar data at p = 1 (the default sweep) via doubled
// buffers, and p = 2 for any data via prefix sums of f and |f|^2.

bool real_scalar(const SampledField& f) {
  if (f.M != 1) return false;
  for (const cplx& v : f.values)
    if (v.imag() != 0.0) return false;
  return true;
}

double sweep_p2(const SampledField& f, int side) {
  // osc_2(Q)^2 = mean |f|^2 - |mean f|^2, componentwise sums.
  const BoundaryGrid& g = f.grid;
  const int N = g.N;
  const int M = f.M;
  const std::size_t count = static_cast<std::size_t>(side) * (g.d == 2 ? side : 1);
  if (g.d == 1) {
    // doubled prefix sums
    std::vector<cplx> pf(static_cast<std::size_t>(2 * N + 1) * M, cplx(0, 0));
    std::vector<double> pa(2 * N + 1, 0.0);
    for (int i = 0; i < 2 * N; ++i) {
      const std::size_t src = static_cast<std::size_t>(i % N);
      double a2 = 0.0;
      for (int c = 0; c < M; ++c) {
        pf[static_cast<std::size_t>(i + 1) * M + c] =
            pf[static_cast<std::size_t>(i) * M + c] + f.values[src * M + c];
        a2 += std::norm(f.values[src * M + c]);
      }
      pa[i + 1] = pa[i] + a2;
    }
    double worst = 0.0;
    for (int pos = 0; pos < N; ++pos) {
      double m2 = 0.0;
      for (int c = 0; c < M; ++c)
        m2 += std::norm(pf[static_cast<std::size_t>(pos + side) * M + c] -
                        pf[static_cast<std::size_t>(pos) * M + c]);
      const double q = (pa[pos + side] - pa[pos]) / count - m2 / (static_cast<double>(count) * count);
      worst = std::max(worst, q);
    }
    return std::sqrt(std::max(0.0, worst));
  }
  // d == 2: doubled summed-area tables.
  const int W = 2 * N;
  std::vector<cplx> sf(static_cast<std::size_t>(W + 1) * (W + 1) * M, cplx(0, 0));
  std::vector<double> sa(static_cast<std::size_t>(W + 1) * (W + 1), 0.0);
  auto sfat = [&](int r, int ccol, int c) -> cplx& {
    return sf[(static_cast<std::size_t>(r) * (W + 1) + ccol) * M + c];
  };
  for (int r = 0; r < W; ++r)
    for (int ccol = 0; ccol < W; ++ccol) {
      const std::size_t src = g.index(ccol % N, r % N);
      double a2 = 0.0;
      for (int c = 0; c < M; ++c) {
        sfat(r + 1, ccol + 1, c) = sfat(r, ccol + 1, c) + sfat(r + 1, ccol, c) -
                                   sfat(r, ccol, c) + f.values[src * M + c];
        a2 += std::norm(f.values[src * M + c]);
      }
      const std::size_t base = static_cast<std::size_t>(r) * (W + 1) + ccol;
      sa[base + W + 2] = sa[base + 1] + sa[base + W + 1] - sa[base] + a2;
    }
  double worst = 0.0;
  for (int r = 0; r < N; ++r)
    for (int ccol = 0; ccol < N; ++ccol) {
      double m2 = 0.0;
      for (int c = 0; c < M; ++c) {
        const cplx s = sfat(r + side, ccol + side, c) - sfat(r, ccol + side, c) -
                       sfat(r + side, ccol, c) + sfat(r, ccol, c);
        m2 += std::norm(s);
      }
      const double q2 = sa[static_cast<std::size_t>(r + side) * (W + 1) + ccol + side] -
                        sa[static_cast<std::size_t>(r) * (W + 1) + ccol + side] -
                        sa[static_cast<std::size_t>(r + side) * (W + 1) + ccol] +
                        sa[static_cast<std::size_t>(r) * (W + 1) + ccol];
      const double q = q2 / count - m2 / (static_cast<double>(count) * count);
      worst = std::max(worst, q);
    }
  return std::sqrt(std::max(0.0, worst));
}

double level_max_oscillation(const SampledField& f, int level, double p) {
  const BoundaryGrid& g = f.grid;
  const int N = g.N;
  const int side = 1 << level;
  const std::size_t count = static_cast<std::size_t>(side) * (g.d == 2 ? side : 1);
  const int M = f.M;

  if (p == 2.0) return sweep_p2(f, side);

  if (p == 1.0 && real_scalar(f)) {
    // Doubled real buffer: contiguous windows with wrap.
    if (g.d == 1) {
      std::vector<double> buf(2 * N), prefix(2 * N + 1, 0.0);
      for (int i = 0; i < 2 * N; ++i) {
        buf[i] = f.values[i % N].real();
        prefix[i + 1] = prefix[i] + buf[i];
      }
      double worst = 0.0;
      for (int pos = 0; pos < N; ++pos) {
        const double mu = (prefix[pos + side] - prefix[pos]) / count;
        double acc = 0.0;
        for (int i = pos; i < pos + side; ++i) acc += std::abs(buf[i] - mu);
        worst = std::max(worst, acc / count);
      }
      return worst;
    }
    // d == 2
    const int W = 2 * N;
    std::vector<double> buf(static_cast<std::size_t>(W) * W);
    std::vector<double> area(static_cast<std::size_t>(W + 1) * (W + 1), 0.0);
    for (int r = 0; r < W; ++r)
      for (int ccol = 0; ccol < W; ++ccol) {
        const double v = f.values[g.index(ccol % N, r % N)].real();
        buf[static_cast<std::size_t>(r) * W + ccol] = v;
        const std::size_t base = static_cast<std::size_t>(r) * (W + 1) + ccol;
        area[base + W + 2] = area[base + 1] + area[base + W + 1] - area[base] + v;
      }
    std::vector<double> row_worst(N, 0.0);
    parallel_for(N, [&](std::size_t rb, std::size_t re) {
      for (std::size_t r = rb; r < re; ++r) {
        double worst = 0.0;
        for (int ccol = 0; ccol < N; ++ccol) {
          const double mu = (area[(r + side) * (W + 1) + ccol + side] -
                             area[r * (W + 1) + ccol + side] -
                             area[(r + side) * (W + 1) + ccol] + area[r * (W + 1) + ccol]) /
                            count;
          double acc = 0.0;
          for (int i = 0; i < side; ++i) {
            const double* rowp = buf.data() + (r + i) * W + ccol;
            for (int j = 0; j < side; ++j) acc += std::abs(rowp[j] - mu);
          }
          worst = std::max(worst, acc / count);
        }
        row_worst[r] = worst;
      }
    });
    double worst = 0.0;
    for (double v : row_worst) worst = std::max(worst, v);
    return worst;
  }

  // Generic path: complex and/or multi-component data, any p >= 1.
  const int rows = (g.d == 2) ? N : 1;
  std::vector<double> row_max(rows, 0.0);
  parallel_for(rows, [&](std::size_t rb, std::size_t re) {
    std::vector<cplx> mean(M);
    for (std::size_t r = rb; r < re; ++r) {
      double worst = 0.0;
      for (int pos = 0; pos < N; ++pos) {
        std::fill(mean.begin(), mean.end(), cplx(0, 0));
        const int rows_in = (g.d == 2) ? side : 1;
        for (int i = 0; i < rows_in; ++i) {
          const int rr = g.d == 2 ? (static_cast<int>(r) + i) % N : 0;
          for (int j = 0; j < side; ++j) {
            const std::size_t src = g.index((pos + j) % N, rr);
            for (int c = 0; c < M; ++c) mean[c] += f.values[src * M + c];
          }
        }
        for (int c = 0; c < M; ++c) mean[c] /= static_cast<double>(count);
        double acc = 0.0;
        for (int i = 0; i < rows_in; ++i) {
          const int rr = g.d == 2 ? (static_cast<int>(r) + i) % N : 0;
          for (int j = 0; j < side; ++j) {
            const std::size_t src = g.index((pos + j) % N, rr);
            double dev2 = 0.0;
            for (int c = 0; c < M; ++c) dev2 += std::norm(f.values[src * M + c] - mean[c]);
            acc += (p == 1.0) ? std::sqrt(dev2) : std::pow(dev2, 0.5 * p);
          }
        }
        acc /= static_cast<double>(count);
        worst = std::max(worst, (p == 1.0) ? acc : std::pow(acc, 1.0 / p));
      }
      row_max[r] = worst;
    }
  });
  double worst = 0.0;
  for (double v : row_max) worst = std::max(worst, v);
  return worst;
}

}  // namespace

double bmo_norm(const SampledField& f, double p) {
  if (p < 1.0) throw std::invalid_argument("bmo_norm: p must be >= 1");
  DyadicCubeFamily fam(f.grid);
  double best = 0.0;
  for (int lev = 1; lev <= fam.max_level; ++lev)
    best = std::max(best, level_max_oscillation(f, lev, p));
  return best;
}

OscillationCurve osc_curve(const SampledField& f, double p, double vmo_threshold_factor) {
  DyadicCubeFamily fam(f.grid);
  OscillationCurve curve;
  double running = 0.0;
  for (int lev = 1; lev <= fam.max_level; ++lev) {
    running = std::max(running, level_max_oscillation(f, lev, p));
    curve.radii.push_back(fam.side_length(lev));
    curve.values.push_back(running);
  }
  curve.vmo_threshold = vmo_threshold_factor * curve.values.back();
  curve.vmo_verdict = curve.values.front() <= curve.vmo_threshold;
  return curve;
}

double morrey_campanato(const SampledField& f, double eta, double p) {
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("morrey_campanato: eta must be in (0,1)");
  DyadicCubeFamily fam(f.grid);
  double best = 0.0;
  for (int lev = 1; lev <= fam.max_level; ++lev) {
    const double weight = std::pow(fam.side_length(lev), -eta);
    best = std::max(best, weight * level_max_oscillation(f, lev, p));
  }
  return best;
}

namespace {

// Shared pair sweep for Holder/Upsilon seminorms: all unwrapped pairs within
// 64h plus seeded long-range pairs; distances are Euclidean on coordinates.
double pair_sweep(const SampledField& f, const std::function<double(double)>& inv_weight,
                  std::uint64_t seed) {
  const BoundaryGrid& g = f.grid;
  const int M = f.M;
  const std::size_t NN = g.node_count();
  const int reach = std::min(64, g.N - 1);

  auto dev = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (int c = 0; c < M; ++c) s += std::norm(f.values[a * M + c] - f.values[b * M + c]);
    return std::sqrt(s);
  };

  double sup = 0.0;
  bool infinite = false;
  if (g.d == 1) {
    for (int off = 1; off <= reach; ++off) {
      const double w = inv_weight(off * g.h);
      if (w == 0.0) continue;
      if (!std::isfinite(w)) {
        for (int a = 0; a + off < g.N && !infinite; ++a)
          if (dev(a, a + off) > 0.0) infinite = true;
        continue;
      }
      for (int a = 0; a + off < g.N; ++a) sup = std::max(sup, dev(a, a + off) * w);
    }
  } else {
    // Offsets with dy > 0, or dy == 0 and dx > 0 (each unordered pair once).
    struct Off {
      int dx, dy;
      double w;
    };
    std::vector<Off> offsets;
    for (int dy = 0; dy <= reach; ++dy)
      for (int dx = (dy == 0 ? 1 : -reach); dx <= reach; ++dx) {
        const double dist = std::hypot(dx * g.h, dy * g.h);
        if (dist > reach * g.h + 1e-12) continue;
        offsets.push_back({dx, dy, inv_weight(dist)});
      }
    std::vector<double> partial(offsets.size(), 0.0);
    std::vector<char> inf_flag(offsets.size(), 0);
    parallel_for(offsets.size(), [&](std::size_t ob, std::size_t oe) {
      for (std::size_t oi = ob; oi < oe; ++oi) {
        const Off& o = offsets[oi];
        if (o.w == 0.0) continue;
        double local = 0.0;
        const int x_lo = std::max(0, -o.dx), x_hi = g.N - std::max(0, o.dx);
        for (int y = 0; y + o.dy < g.N; ++y) {
          const std::size_t rowa = static_cast<std::size_t>(y) * g.N;
          const std::size_t rowb = static_cast<std::size_t>(y + o.dy) * g.N + o.dx;
          for (int x = x_lo; x < x_hi; ++x) {
            const double d = dev(rowa + x, rowb + x);
            if (!std::isfinite(o.w)) {
              if (d > 0.0) inf_flag[oi] = 1;
            } else {
              local = std::max(local, d * o.w);
            }
          }
        }
        partial[oi] = local;
      }
    });
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      sup = std::max(sup, partial[i]);
      if (inf_flag[i]) infinite = true;
    }
  }

  // Seeded long-range pairs.
  SplitMix64 rng(seed);
  double coords_a[2], coords_b[2];
  for (int i = 0; i < 100000; ++i) {
    const std::size_t a = rng.below(NN);
    const std::size_t b = rng.below(NN);
    if (a == b) continue;
    f.grid.node_coords(a, coords_a);
    f.grid.node_coords(b, coords_b);
    double dist2 = 0.0;
    for (int c = 0; c < g.d; ++c) {
      const double dd = coords_a[c] - coords_b[c];
      dist2 += dd * dd;
    }
    const double w = inv_weight(std::sqrt(dist2));
    if (w == 0.0) continue;
    const double d = dev(a, b);
    if (!std::isfinite(w)) {
      if (d > 0.0) infinite = true;
      continue;
    }
    sup = std::max(sup, d * w);
  }
  if (infinite) return std::numeric_limits<double>::infinity();
  return sup;
}

}  // namespace

double holder_seminorm(const SampledField& f, double eta, std::uint64_t seed) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::invalid_argument("holder_seminorm: eta must be in (0,1]");
  return pair_sweep(
      f, [eta](double dist) { return dist > 0.0 ? std::pow(dist, -eta) : 0.0; }, seed);
}

double upsilon_seminorm(const SampledField& f, const std::function<double(double)>& Upsilon,
                        std::uint64_t seed) {
  return pair_sweep(
      f,
      [&](double dist) {
        const double u = Upsilon(dist);
        if (u > 0.0) return 1.0 / u;
        return std::numeric_limits<double>::infinity();
      },
      seed);
}

namespace {

// Trapezoid weights in log t over ladder nodes up to index m (inclusive).
// integral ~= sum_k w_k phi(t_k), phi the integrand as a function of log t.
std::vector<double> log_trapezoid_weights(const std::vector<double>& t, int m) {
  std::vector<double> w(m + 1, 0.0);
  for (int k = 0; k < m; ++k) {
    const double ds = std::log(t[k + 1] / t[k]);
    w[k] += 0.5 * ds;
    w[k + 1] += 0.5 * ds;
  }
  return w;
}

struct BoxSweep {
  std::vector<double> per_level_sup;  // over cubes of each dyadic level
  std::vector<double> radii;
};

// Shared cube sweep over the Littlewood-Paley box integrals:
//   value(Q) = ( (1/|Q|) sum_{t_k <= l(Q)} w_k c_k(t_k) h^d sum_{x in Q} dens(x,t_k) )^{1/2}
// where dens is |grad u|^2 (with c_k = t_k^2, measure t dx dt) or |F|^2
// (with c_k = 1, measure dx dt / t).
BoxSweep box_sweep(const BoundaryGrid& g, const std::vector<double>& t_levels,
                   const std::function<double(int, std::size_t)>& dens, bool weight_t2) {
  DyadicCubeFamily fam(g);
  const std::size_t NN = g.node_count();
  const int K = static_cast<int>(t_levels.size());

  // Per ladder level: node array of dens, plus running per-cube partial sums
  // reused across dyadic levels via recursive 2^d aggregation.
  // Simpler exact approach: for each dyadic level, accumulate the weighted
  // time sum first (ladder levels t_k <= side), then cube sums of that plane.
  BoxSweep out;
  std::vector<double> plane(NN, 0.0);  // sum_k w_k c_k dens(.,t_k) for the current level

  for (int lev = 1; lev <= fam.max_level; ++lev) {
    const double side = fam.side_length(lev);
    // Extend the time quadrature to include all t_k <= side (with weights
    // recomputed for the truncated ladder; recompute the plane on change).
    int m = -1;
    for (int k = 0; k < K; ++k)
      if (t_levels[k] <= side * (1.0 + 1e-12)) m = k;
    if (m < 0) {
      out.per_level_sup.push_back(0.0);
      out.radii.push_back(side);
      continue;
    }
    std::vector<double> w = log_trapezoid_weights(t_levels, m);
    // plane = sum_{k<=m} w_k c_k dens_k; rebuild when weights changed.
    std::fill(plane.begin(), plane.end(), 0.0);
    for (int k = 0; k <= m; ++k) {
      const double c = weight_t2 ? t_levels[k] * t_levels[k] : 1.0;
      const double wk = w[k] * c;
      if (wk == 0.0) continue;
      parallel_for(NN, [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) plane[x] += wk * dens(k, x);
      });
    }
    // Cube sums of the plane at this dyadic level.
    const int sideN = 1 << lev;
    const int pos = g.N >> lev;
    const double inv_meas = std::pow(g.h, g.d) / std::pow(side, g.d);
    double sup = 0.0;
    if (g.d == 1) {
      for (int j0 = 0; j0 < pos; ++j0) {
        double s = 0.0;
        for (int i = 0; i < sideN; ++i) s += plane[static_cast<std::size_t>(j0) * sideN + i];
        sup = std::max(sup, s * inv_meas);
      }
    } else {
      for (int j1 = 0; j1 < pos; ++j1)
        for (int j0 = 0; j0 < pos; ++j0) {
          double s = 0.0;
          for (int r = 0; r < sideN; ++r) {
            const std::size_t row0 =
                g.index(j0 * sideN, j1 * sideN + r);
            for (int i = 0; i < sideN; ++i) s += plane[row0 + i];
          }
          sup = std::max(sup, s * inv_meas);
        }
    }
    out.per_level_sup.push_back(std::sqrt(std::max(0.0, sup)));
    out.radii.push_back(side);
  }
  return out;
}

void require_gradient(const HalfSpaceField& u, const char* who) {
  if (!u.has_gradient())
    throw std::invalid_argument(std::string(who) + ": field lacks gradient channels");
}

}  // namespace

double carleson_norm(const HalfSpaceField& u) {
  require_gradient(u, "carleson_norm");
  BoxSweep sweep = box_sweep(
      u.grid, u.t_levels, [&](int k, std::size_t x) { return u.grad_sq(k, x); }, true);
  double best = 0.0;
  for (double v : sweep.per_level_sup) best = std::max(best, v);
  return best;
}

CarlesonProfile carleson_profile(const HalfSpaceField& u) {
  require_gradient(u, "carleson_profile");
  BoxSweep sweep = box_sweep(
      u.grid, u.t_levels, [&](int k, std::size_t x) { return u.grad_sq(k, x); }, true);
  CarlesonProfile prof;
  double running = 0.0;
  for (std::size_t i = 0; i < sweep.radii.size(); ++i) {
    running = std::max(running, sweep.per_level_sup[i]);
    prof.radii.push_back(sweep.radii[i]);
    prof.values.push_back(running);
  }
  return prof;
}

double fractional_carleson(const HalfSpaceField& u, double eta, double q) {
  require_gradient(u, "fractional_carleson");
  if (!(eta > 0.0 && eta < 1.0) || !(q >= 1.0))
    throw std::invalid_argument("fractional_carleson: need eta in (0,1), q >= 1");
  const BoundaryGrid& g = u.grid;
  DyadicCubeFamily fam(g);
  const std::size_t NN = g.node_count();
  const int K = static_cast<int>(u.t_levels.size());

  double best = 0.0;
  std::vector<double> vert(NN, 0.0), plane(NN, 0.0);
  for (int lev = 1; lev <= fam.max_level; ++lev) {
    const double side = fam.side_length(lev);
    int m = -1;
    for (int k = 0; k < K; ++k)
      if (u.t_levels[k] <= side * (1.0 + 1e-12)) m = k;
    if (m < 0) continue;
    std::vector<double> w = log_trapezoid_weights(u.t_levels, m);
    parallel_for(NN, [&](std::size_t b, std::size_t e) {
      for (std::size_t x = b; x < e; ++x) {
        double s = 0.0;
        for (int k = 0; k <= m; ++k)
          s += w[k] * u.t_levels[k] * u.t_levels[k] * u.grad_sq(k, x);
        vert[x] = s;
        plane[x] = (q == 2.0) ? s : std::pow(s, 0.5 * q);
      }
    });
    const int sideN = 1 << lev;
    const int pos = g.N >> lev;
    const double inv_count = 1.0 / std::pow(static_cast<double>(sideN), g.d);
    const double weight = std::pow(side, -eta);
    const int rows = (g.d == 2) ? pos : 1;
    for (int j1 = 0; j1 < rows; ++j1)
      for (int j0 = 0; j0 < pos; ++j0) {
        double s = 0.0;
        const int rin = (g.d == 2) ? sideN : 1;
        for (int r = 0; r < rin; ++r) {
          const std::size_t row0 = g.index(j0 * sideN, g.d == 2 ? j1 * sideN + r : 0);
          for (int i = 0; i < sideN; ++i) s += plane[row0 + i];
        }
        s *= inv_count;
        best = std::max(best, weight * std::pow(s, 1.0 / q));
      }
  }
  return best;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Vanishing:
      return "vanishing";
    case Verdict::NotVanishing:
      return "not_vanishing";
    default:
      return "inconclusive";
  }
}

Verdict decay_verdict(double first, double last, double threshold_vanishing,
                      double threshold_not) {
  if (first <= 1e-13) return Verdict::Vanishing;  // identically-zero tables
  const double ratio = last / first;
  if (ratio <= threshold_vanishing) return Verdict::Vanishing;
  if (ratio >= threshold_not) return Verdict::NotVanishing;
  return Verdict::Inconclusive;
}

VanishingReport vanishing_carleson_test(const HalfSpaceField& u, double threshold_vanishing,
                                        double threshold_not) {
  VanishingReport rep;
  rep.threshold_vanishing = threshold_vanishing;
  rep.threshold_not = threshold_not;
  rep.profile = carleson_profile(u);
  const double first = rep.profile.values.back();   // largest radius
  const double last = rep.profile.values.front();   // smallest radius
  rep.ratio = first > 0.0 ? last / first : 0.0;
  rep.verdict = decay_verdict(first, last, threshold_vanishing, threshold_not);
  return rep;
}

TailReport oscillation_tail(const SampledField& f, double r, double eps) {
  const double S = f.grid.half_extent();
  if (!(r > 0.0) || r > S) throw std::invalid_argument("oscillation_tail: need 0 < r <= S");
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("oscillation_tail: eps must be in (0,1]");
  OscillationCurve curve = osc_curve(f, 1.0);
  // Piecewise-constant osc(rho): value at the largest dyadic radius <= rho
  // (clamped to the curve range).
  auto osc_at = [&](double rho) {
    if (rho <= curve.radii.front()) return curve.values.front();
    double v = curve.values.front();
    for (std::size_t i = 0; i < curve.radii.size(); ++i)
      if (curve.radii[i] <= rho) v = curve.values[i];
    return v;
  };
  TailReport rep;
  rep.lambda_max = S / r;
  if (rep.lambda_max <= 1.0) {
    rep.value = 0.0;
    rep.nodes = 0;
    return rep;
  }
  // Trapezoid in log lambda of osc_1(f; lambda r) lambda^{-eps}.
  const int nodes = 257;
  const double s_hi = std::log(rep.lambda_max);
  const double ds = s_hi / (nodes - 1);
  double acc = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double s = i * ds;
    const double lambda = std::exp(s);
    const double val = osc_at(lambda * r) * std::exp(-eps * s);
    acc += (i == 0 || i == nodes - 1) ? 0.5 * val : val;
  }
  rep.value = acc * ds;
  rep.nodes = nodes;
  return rep;
}

}  // namespace hsbmo
