// Brute-force 2D fixed-point oracle.
//
// The lifted law puts the reduced x on one pair of coordinates and y on the
// other, so every W component is image(t, s, u) with each of t, s, u taken
// from either the column (x) or the row (y). Terms are computed once per
// axis; the node loop is a broadcast plus the vector image kernel.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "hcgibbs/error.hpp"
#include "hcgibbs/phases.hpp"
#include "hcgibbs/simd/kernels.hpp"

namespace hcgibbs {

int worker_threads() {
  if (const char* env = std::getenv("HC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

struct Component {
  bool t_col, s_col, u_col;  // which axis each factor comes from
  bool cmp_col;              // compared against the column's z (else row's)
  int w_index;               // component of W in (z1, z2, z7, z8) order
};

// Two residual components used per invariant set.
std::array<Component, 2> components(InvariantSet set) {
  switch (set) {
    case InvariantSet::I2:  // z1 = z7 = a(x), z2 = z8 = b(y)
      return {{{true, false, false, true, 0}, {false, true, true, false, 1}}};
    case InvariantSet::I3:  // z1 = z2 = a(x), z7 = z8 = b(y)
      return {{{false, false, true, true, 0}, {true, true, false, false, 2}}};
    case InvariantSet::I4:  // z2 = z7 = a(x), z1 = z8 = b(y)
    default:
      return {{{true, false, true, false, 0}, {false, true, false, true, 1}}};
  }
}

double to_z(const ReducedCase& rc, double v, double lambda) {
  switch (rc.kind) {
    case ReducedKind::I3Power:
    case ReducedKind::I4Power: return std::pow(v, rc.i);
    case ReducedKind::I2Shifted: return (v - 1.0) / lambda;
    case ReducedKind::I2Square: return v * v;
    default: return v;
  }
}

struct Axis {
  std::vector<double> v, z, t, s, u;
};

Axis make_axis(const simd::KernelTable& kt, const ReducedCase& rc, double lambda, double lo, double hi, int n) {
  Axis a;
  a.v.resize(n);
  a.z.resize(n);
  a.t.resize(n);
  a.s.resize(n);
  a.u.resize(n);
  const double h = (hi - lo) / n;
  for (int j = 0; j < n; ++j) {
    a.v[j] = lo + (j + 0.5) * h;
    a.z[j] = to_z(rc, a.v[j], lambda);
  }
  kt.terms({rc.k, rc.i, lambda}, a.z.data(), n, a.t.data(), a.s.data(), a.u.data());
  return a;
}

struct Box {
  double xlo, xhi, ylo, yhi;
};

// Fixed points in B lie in hull(Phi(B)); sample Phi and intersect.
Box contract_box(const ReducedCase& rc, double lambda, Box box) {
  constexpr int M = 129;
  const ModelParams mp{rc.k, rc.i, lambda};
  const double wmin_x = 1e-6 * (box.xhi - box.xlo), wmin_y = 1e-6 * (box.yhi - box.ylo);
  for (int round = 0; round < 8; ++round) {
    double mnx = INFINITY, mxx = -INFINITY, mny = INFINITY, mxy = -INFINITY;
    for (int a = 0; a < M; ++a) {
      for (int b = 0; b < M; ++b) {
        const ReducedPoint p{box.xlo + (box.xhi - box.xlo) * a / (M - 1), box.ylo + (box.yhi - box.ylo) * b / (M - 1)};
        try {
          const auto q = project(rc, eval_W(lift(rc, p, lambda), mp), lambda);
          if (!std::isfinite(q.x) || !std::isfinite(q.y)) continue;
          mnx = std::min(mnx, q.x);
          mxx = std::max(mxx, q.x);
          mny = std::min(mny, q.y);
          mxy = std::max(mxy, q.y);
        } catch (const std::exception&) {
        }
      }
    }
    if (!(mnx <= mxx) || !(mny <= mxy)) break;
    const double mx = 0.1 * (mxx - mnx) + 0.01 * (box.xhi - box.xlo);
    const double my = 0.1 * (mxy - mny) + 0.01 * (box.yhi - box.ylo);
    Box next{std::max(box.xlo, mnx - mx), std::min(box.xhi, mxx + mx), std::max(box.ylo, mny - my),
             std::min(box.yhi, mxy + my)};
    if (!(next.xlo < next.xhi) || !(next.ylo < next.yhi)) break;
    // A strongly contractive map would squeeze the box toward ulp size;
    // keep enough width for the grid and the 3-cell acceptance test.
    bool floored = false;
    auto widen = [&](double& lo, double& hi, double olo, double ohi, double w) {
      if (hi - lo >= w) return;
      const double c = 0.5 * (lo + hi);
      lo = std::max(olo, c - 0.5 * w);
      hi = std::min(ohi, c + 0.5 * w);
      floored = true;
    };
    widen(next.xlo, next.xhi, box.xlo, box.xhi, wmin_x);
    widen(next.ylo, next.yhi, box.ylo, box.yhi, wmin_y);
    const double shrink = ((next.xhi - next.xlo) * (next.yhi - next.ylo)) / ((box.xhi - box.xlo) * (box.yhi - box.ylo));
    box = next;
    if (shrink > 0.99 || floored) break;
  }
  return box;
}

struct Cell {
  int col, row;
};

// Residual rows for one band of cell rows [r0, r1).
void scan_band(const simd::KernelTable& kt, const ReducedCase& rc, double lambda, const Axis& ax, const Axis& ay,
               int r0, int r1, std::vector<Cell>& out) {
  const int n = static_cast<int>(ax.v.size());
  const auto comps = components(rc.set);
  std::vector<double> bt(n), bs(n), bu(n), tmp(n);
  std::array<std::vector<double>, 2> prev{std::vector<double>(n), std::vector<double>(n)};
  std::array<std::vector<double>, 2> cur{std::vector<double>(n), std::vector<double>(n)};

  auto fill_row = [&](int row, std::array<std::vector<double>, 2>& dst) {
    std::fill(bt.begin(), bt.end(), ay.t[row]);
    std::fill(bs.begin(), bs.end(), ay.s[row]);
    std::fill(bu.begin(), bu.end(), ay.u[row]);
    for (int c = 0; c < 2; ++c) {
      const auto& cp = comps[c];
      kt.image(rc.i, lambda, cp.t_col ? ax.t.data() : bt.data(), cp.s_col ? ax.s.data() : bs.data(),
               cp.u_col ? ax.u.data() : bu.data(), n, tmp.data());
      auto& d = dst[c];
      if (cp.cmp_col) {
        for (int j = 0; j < n; ++j) d[j] = tmp[j] - ax.z[j];
      } else {
        const double zr = ay.z[row];
        for (int j = 0; j < n; ++j) d[j] = tmp[j] - zr;
      }
    }
  };

  auto straddles = [](double a, double b, double c, double d) {
    const double lo = std::min(std::min(a, b), std::min(c, d));
    const double hi = std::max(std::max(a, b), std::max(c, d));
    return lo <= 0.0 && hi >= 0.0;  // NaN compares false and drops out
  };

  fill_row(r0, prev);
  for (int row = r0; row < r1; ++row) {
    fill_row(row + 1, cur);
    for (int j = 0; j + 1 < n; ++j) {
      if (straddles(prev[0][j], prev[0][j + 1], cur[0][j], cur[0][j + 1]) &&
          straddles(prev[1][j], prev[1][j + 1], cur[1][j], cur[1][j + 1])) {
        out.push_back({j, row});
      }
    }
    std::swap(prev, cur);
  }
}

struct Newton {
  const ReducedCase& rc;
  double lambda;
  ModelParams mp;
  std::array<Component, 2> comps;

  // Residual of the two set components at (x, y); false if W is undefined.
  bool eval(double x, double y, std::array<double, 2>& r) const {
    if (!in_domain(rc, {x, y}, lambda)) return false;
    try {
      const auto z = lift(rc, {x, y}, lambda);
      const auto w = eval_W(z, mp).as_array();
      const auto za = z.as_array();
      for (int c = 0; c < 2; ++c) r[c] = w[comps[c].w_index] - za[comps[c].w_index];
      return std::isfinite(r[0]) && std::isfinite(r[1]);
    } catch (const std::exception&) {
      return false;
    }
  }

  bool solve(double& x, double& y, double h) const {
    std::array<double, 2> r{};
    if (!eval(x, y, r)) return false;
    double norm = std::max(std::abs(r[0]), std::abs(r[1]));
    for (int it = 0; it < 60 && norm > 1e-15; ++it) {
      std::array<double, 2> rx{}, ry{};
      double hx = h, hy = h;
      if (!eval(x + hx, y, rx)) {
        hx = -h;
        if (!eval(x + hx, y, rx)) return false;
      }
      if (!eval(x, y + hy, ry)) {
        hy = -h;
        if (!eval(x, y + hy, ry)) return false;
      }
      const double j00 = (rx[0] - r[0]) / hx, j10 = (rx[1] - r[1]) / hx;
      const double j01 = (ry[0] - r[0]) / hy, j11 = (ry[1] - r[1]) / hy;
      const double det = j00 * j11 - j01 * j10;
      if (det == 0.0 || !std::isfinite(det)) return false;
      const double dx = -(j11 * r[0] - j01 * r[1]) / det;
      const double dy = -(-j10 * r[0] + j00 * r[1]) / det;
      double step = 1.0;
      bool moved = false;
      for (int half = 0; half < 40; ++half, step *= 0.5) {
        std::array<double, 2> rn{};
        const double nx = x + step * dx, ny = y + step * dy;
        if (eval(nx, ny, rn)) {
          const double nn = std::max(std::abs(rn[0]), std::abs(rn[1]));
          if (nn < norm) {
            x = nx;
            y = ny;
            r = rn;
            norm = nn;
            moved = true;
            break;
          }
        }
      }
      if (!moved) break;
      h = std::min(h, std::max(1e-10, 1e-3 * std::hypot(dx, dy)));
    }
    return norm <= kResidualTol;
  }
};

std::vector<ReducedPoint> scalar_oracle(const ReducedCase& rc, double lambda, int resolution) {
  const ModelParams mp{rc.k, rc.i, lambda};
  const auto d = domain(rc, lambda);
  const ScalarFn r = [&](double x) { return eval_W(BoundaryLaw4::constant(x), mp).z1 - x; };
  std::vector<ReducedPoint> out;
  for (double x : bracketed_roots(r, d.lo, d.hi, 16 * resolution, 1e-15).roots) {
    if (std::abs(r(x)) <= kResidualTol) out.push_back({x, x});
  }
  return out;
}

}  // namespace

std::vector<ReducedPoint> grid_oracle(const ReducedCase& rc, double lambda, const OracleOptions& options) {
  if (!is_supported(rc.set, rc.k, rc.i)) throw UnsupportedCase("grid_oracle: unsupported case");
  if (options.resolution < 4) throw DomainError("grid_oracle: resolution must be >= 4");
  if (rc.kind == ReducedKind::Scalar) return scalar_oracle(rc, lambda, options.resolution);

  const auto& kt = options.kernels ? *options.kernels : simd::active_kernels();
  const auto d = domain(rc, lambda);
  Box box{d.lo, d.hi, d.lo, d.hi};
  if (options.contract) box = contract_box(rc, lambda, box);

  const int n = options.resolution;
  const Axis ax = make_axis(kt, rc, lambda, box.xlo, box.xhi, n);
  const Axis ay = make_axis(kt, rc, lambda, box.ylo, box.yhi, n);

  const int rows = n - 1;
  const int threads = std::max(1, std::min(options.threads > 0 ? options.threads : worker_threads(), rows / 64 + 1));
  std::vector<std::vector<Cell>> found(threads);
  if (threads == 1) {
    scan_band(kt, rc, lambda, ax, ay, 0, rows, found[0]);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      const int r0 = rows * t / threads, r1 = rows * (t + 1) / threads;
      pool.emplace_back([&, t, r0, r1] { scan_band(kt, rc, lambda, ax, ay, r0, r1, found[t]); });
    }
    for (auto& th : pool) th.join();
  }

  const double cw_x = (box.xhi - box.xlo) / n, cw_y = (box.yhi - box.ylo) / n;
  const double cell = std::max(cw_x, cw_y);
  const Newton newton{rc, lambda, {rc.k, rc.i, lambda}, components(rc.set)};
  std::vector<ReducedPoint> out;
  auto near = [&](double x, double y, double dist) {
    for (const auto& p : out) {
      if (std::abs(p.x - x) <= dist && std::abs(p.y - y) <= dist) return true;
    }
    return false;
  };
  for (const auto& band : found) {
    for (const auto& c : band) {
      const double x0 = 0.5 * (ax.v[c.col] + ax.v[c.col + 1]);
      const double y0 = 0.5 * (ay.v[c.row] + ay.v[c.row + 1]);
      if (near(x0, y0, 2.0 * cell)) continue;
      double x = x0, y = y0;
      if (!newton.solve(x, y, std::max(1e-10, 1e-3 * cell))) continue;
      if (std::abs(x - x0) > 3.0 * cw_x || std::abs(y - y0) > 3.0 * cw_y) continue;
      if (near(x, y, kSolutionDedup)) continue;
      out.push_back({x, y});
    }
  }
  std::sort(out.begin(), out.end(), [](auto a, auto b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  return out;
}

}  // namespace hcgibbs
