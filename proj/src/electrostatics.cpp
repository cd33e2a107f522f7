#include "molqi/electrostatics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "molqi/error.hpp"

namespace molqi {

namespace {

constexpr double kElementaryCharge = 1.602176634e-19;  // C
constexpr double kEpsilon0 = 8.8541878128e-12;         // F/m
constexpr double kPlanck = 6.62607015e-34;             // J s
constexpr double kDebye = 3.33564e-30;                 // C m
constexpr double kStarkMhzPerKvm = 5.0;
constexpr double kPi = 3.14159265358979323846;
constexpr int kMultiple = 16;
constexpr int kSmoothSweeps = 2;
constexpr int kCoarseSweeps = 40;

int round_up(double cells, int multiple) {
  const int n = static_cast<int>(std::ceil(cells - 1e-9));
  return ((n + multiple - 1) / multiple) * multiple;
}

// One grid level of the quarter domain x >= 0, y >= 0. Face coefficients
// include the boundary faces: zero on the symmetry planes, twice the cell
// permittivity on the grounded box.
struct Level {
  int nx = 0, ny = 0, nz = 0;
  double h = 0.0;
  std::vector<float> kx, ky, kz;
  std::vector<double> diag;
  std::vector<std::uint8_t> fixed;
  std::vector<double> x, b, r;

  std::size_t cells() const { return std::size_t(nx) * ny * nz; }
  std::size_t idx(int i, int j, int k) const {
    return (std::size_t(k) * ny + j) * nx + i;
  }
  std::size_t fx(int i, int j, int k) const {
    return (std::size_t(k) * ny + j) * (nx + 1) + i;
  }
  std::size_t fy(int i, int j, int k) const {
    return (std::size_t(k) * (ny + 1) + j) * nx + i;
  }
  std::size_t fz(int i, int j, int k) const {
    return (std::size_t(k) * ny + j) * nx + i;
  }

  void finish() {
    diag.assign(cells(), 0.0);
    for (int k = 0; k < nz; ++k)
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
          diag[idx(i, j, k)] = double(kx[fx(i, j, k)]) + kx[fx(i + 1, j, k)] +
                               ky[fy(i, j, k)] + ky[fy(i, j + 1, k)] +
                               kz[fz(i, j, k)] + kz[fz(i, j, k + 1)];
        }
    x.assign(cells(), 0.0);
    b.assign(cells(), 0.0);
    r.assign(cells(), 0.0);
  }

  // Sum over the six neighbours of K_f u_nb; fixed cells hold zero.
  double neighbour_sum(const double* u, int i, int j, int k, std::size_t c) const {
    double s = 0.0;
    if (i > 0) s += kx[fx(i, j, k)] * u[c - 1];
    if (i < nx - 1) s += kx[fx(i + 1, j, k)] * u[c + 1];
    if (j > 0) s += ky[fy(i, j, k)] * u[c - nx];
    if (j < ny - 1) s += ky[fy(i, j + 1, k)] * u[c + nx];
    const std::size_t plane = std::size_t(nx) * ny;
    if (k > 0) s += kz[fz(i, j, k)] * u[c - plane];
    if (k < nz - 1) s += kz[fz(i, j, k + 1)] * u[c + plane];
    return s;
  }

  void apply(const std::vector<double>& u, std::vector<double>& out) const {
    const double* up = u.data();
    for (int k = 0; k < nz; ++k)
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
          const std::size_t c = idx(i, j, k);
          out[c] = fixed[c] ? 0.0
                            : h * (diag[c] * up[c] - neighbour_sum(up, i, j, k, c));
        }
  }

  // Red-black Gauss-Seidel half sweep on x for right-hand side b.
  void smooth_color(int color) {
    double* up = x.data();
    for (int k = 0; k < nz; ++k)
      for (int j = 0; j < ny; ++j)
        for (int i = (j + k + color) & 1; i < nx; i += 2) {
          const std::size_t c = idx(i, j, k);
          if (fixed[c] || diag[c] == 0.0) continue;
          up[c] = (b[c] / h + neighbour_sum(up, i, j, k, c)) / diag[c];
        }
  }

  void residual() {
    apply(x, r);
    for (std::size_t c = 0; c < cells(); ++c) r[c] = fixed[c] ? 0.0 : b[c] - r[c];
  }
};

std::unique_ptr<Level> coarsen(const Level& f) {
  auto c = std::make_unique<Level>();
  c->nx = f.nx / 2;
  c->ny = f.ny / 2;
  c->nz = f.nz / 2;
  c->h = 2.0 * f.h;
  c->kx.assign(std::size_t(c->nx + 1) * c->ny * c->nz, 0.0f);
  c->ky.assign(std::size_t(c->nx) * (c->ny + 1) * c->nz, 0.0f);
  c->kz.assign(std::size_t(c->nx) * c->ny * (c->nz + 1), 0.0f);
  c->fixed.assign(c->cells(), 0);
  for (int k = 0; k < c->nz; ++k)
    for (int j = 0; j < c->ny; ++j)
      for (int i = 0; i <= c->nx; ++i) {
        double s = 0.0;
        for (int dk = 0; dk < 2; ++dk)
          for (int dj = 0; dj < 2; ++dj) s += f.kx[f.fx(2 * i, 2 * j + dj, 2 * k + dk)];
        c->kx[c->fx(i, j, k)] = float(0.25 * s);
      }
  for (int k = 0; k < c->nz; ++k)
    for (int j = 0; j <= c->ny; ++j)
      for (int i = 0; i < c->nx; ++i) {
        double s = 0.0;
        for (int dk = 0; dk < 2; ++dk)
          for (int di = 0; di < 2; ++di) s += f.ky[f.fy(2 * i + di, 2 * j, 2 * k + dk)];
        c->ky[c->fy(i, j, k)] = float(0.25 * s);
      }
  for (int k = 0; k <= c->nz; ++k)
    for (int j = 0; j < c->ny; ++j)
      for (int i = 0; i < c->nx; ++i) {
        double s = 0.0;
        for (int dj = 0; dj < 2; ++dj)
          for (int di = 0; di < 2; ++di) s += f.kz[f.fz(2 * i + di, 2 * j + dj, 2 * k)];
        c->kz[c->fz(i, j, k)] = float(0.25 * s);
      }
  for (int k = 0; k < f.nz; ++k)
    for (int j = 0; j < f.ny; ++j)
      for (int i = 0; i < f.nx; ++i)
        if (f.fixed[f.idx(i, j, k)]) c->fixed[c->idx(i / 2, j / 2, k / 2)] = 1;
  c->finish();
  return c;
}

class Multigrid {
 public:
  explicit Multigrid(std::unique_ptr<Level> fine) {
    levels_.push_back(std::move(fine));
    while (true) {
      const Level& l = *levels_.back();
      if (l.nx % 2 || l.ny % 2 || l.nz % 2 || std::min({l.nx, l.ny, l.nz}) < 8) break;
      levels_.push_back(coarsen(l));
    }
  }

  Level& fine() { return *levels_.front(); }

  // z = M^{-1} r by one symmetric V-cycle from a zero guess.
  void precondition(const std::vector<double>& r, std::vector<double>& z) {
    Level& f = fine();
    f.b = r;
    cycle(0);
    z = f.x;
  }

 private:
  void cycle(std::size_t l) {
    Level& lv = *levels_[l];
    std::fill(lv.x.begin(), lv.x.end(), 0.0);
    if (l + 1 == levels_.size()) {
      for (int s = 0; s < kCoarseSweeps; ++s) {
        lv.smooth_color(0);
        lv.smooth_color(1);
      }
      for (int s = 0; s < kCoarseSweeps; ++s) {
        lv.smooth_color(1);
        lv.smooth_color(0);
      }
      return;
    }
    for (int s = 0; s < kSmoothSweeps; ++s) {
      lv.smooth_color(0);
      lv.smooth_color(1);
    }
    lv.residual();
    Level& co = *levels_[l + 1];
    std::fill(co.b.begin(), co.b.end(), 0.0);
    for (int k = 0; k < lv.nz; ++k)
      for (int j = 0; j < lv.ny; ++j)
        for (int i = 0; i < lv.nx; ++i)
          co.b[co.idx(i / 2, j / 2, k / 2)] += lv.r[lv.idx(i, j, k)];
    for (std::size_t c = 0; c < co.cells(); ++c)
      if (co.fixed[c]) co.b[c] = 0.0;
    cycle(l + 1);
    for (int k = 0; k < lv.nz; ++k)
      for (int j = 0; j < lv.ny; ++j)
        for (int i = 0; i < lv.nx; ++i) {
          const std::size_t c = lv.idx(i, j, k);
          if (!lv.fixed[c]) lv.x[c] += co.x[co.idx(i / 2, j / 2, k / 2)];
        }
    for (int s = 0; s < kSmoothSweeps; ++s) {
      lv.smooth_color(1);
      lv.smooth_color(0);
    }
  }

  std::vector<std::unique_ptr<Level>> levels_;
};

struct Domain {
  double h = 0.0;
  double z0 = 0.0;  // bottom of the box
  int nx = 0, ny = 0, nz = 0;

  Point3 center(int i, int j, int k) const {
    return {(i + 0.5) * h, (j + 0.5) * h, z0 + (k + 0.5) * h};
  }
};

bool in_island(const Geometry& g, const Point3& p) {
  return p.x <= 0.5 * g.island_width && p.y <= 0.5 * g.island_length &&
         p.z >= g.distance && p.z <= g.distance + g.island_height;
}

double permittivity(const Geometry& g, const Point3& p) {
  const bool in_guide = p.x <= 0.5 * g.waveguide_width && p.z <= 0.0 &&
                        p.z >= -g.waveguide_height;
  if (in_guide) return g.eps_waveguide;
  if (p.z < g.distance) return g.eps_substrate;
  return g.eps_vacuum;
}

// Trilinear interpolation of cell-centred values, mirrored across the
// symmetry planes and zero outside the box.
double sample(const Domain& dom, const std::vector<double>& phi, Point3 p) {
  const double fi = std::abs(p.x) / dom.h - 0.5;
  const double fj = std::abs(p.y) / dom.h - 0.5;
  const double fk = (p.z - dom.z0) / dom.h - 0.5;
  const int i0 = int(std::floor(fi));
  const int j0 = int(std::floor(fj));
  const int k0 = int(std::floor(fk));
  const double tx = fi - i0, ty = fj - j0, tz = fk - k0;
  auto at = [&](int i, int j, int k) {
    if (i < 0) i = -1 - i;
    if (j < 0) j = -1 - j;
    if (i >= dom.nx || j >= dom.ny || k < 0 || k >= dom.nz) return 0.0;
    return phi[(std::size_t(k) * dom.ny + j) * dom.nx + i];
  };
  double v = 0.0;
  for (int dk = 0; dk < 2; ++dk)
    for (int dj = 0; dj < 2; ++dj)
      for (int di = 0; di < 2; ++di) {
        const double w = (di ? tx : 1 - tx) * (dj ? ty : 1 - ty) * (dk ? tz : 1 - tz);
        v += w * at(i0 + di, j0 + dj, k0 + dk);
      }
  return v;
}

// |grad phi| at p by central differences over one cell, phi in volts and
// lengths in nm; returns kV/m.
double field_at(const Domain& dom, const std::vector<double>& phi, Point3 p) {
  const double h = dom.h;
  const double ex = sample(dom, phi, {p.x + h, p.y, p.z}) - sample(dom, phi, {p.x - h, p.y, p.z});
  const double ey = sample(dom, phi, {p.x, p.y + h, p.z}) - sample(dom, phi, {p.x, p.y - h, p.z});
  const double ez = sample(dom, phi, {p.x, p.y, p.z + h}) - sample(dom, phi, {p.x, p.y, p.z - h});
  const double v_per_nm = std::sqrt(ex * ex + ey * ey + ez * ez) / (2.0 * h);
  return v_per_nm * 1e9 / 1e3;
}

}  // namespace

const char* molecule_position_name(MoleculePosition pos) {
  switch (pos) {
    case MoleculePosition::kNearEdge: return "near";
    case MoleculePosition::kCenter: return "center";
    case MoleculePosition::kFarEdge: return "far";
  }
  return "near";
}

Point3 molecule_coordinates(const Geometry& g, MoleculePosition pos) {
  switch (pos) {
    case MoleculePosition::kNearEdge:
      return {0.5 * g.island_width, 0.0, -g.edge_inset};
    case MoleculePosition::kCenter:
      return {0.0, 0.0, -0.5 * g.waveguide_height};
    case MoleculePosition::kFarEdge:
      return {0.5 * g.island_width, 0.0, -g.waveguide_height + g.edge_inset};
  }
  return {};
}

double field_point_charge(double d_nm, double eps_r) {
  if (!(d_nm > 0.0) || !(eps_r >= 1.0)) {
    throw Error(ErrorCode::kDomainError, "need d > 0 and eps_r >= 1");
  }
  const double d = d_nm * 1e-9;
  const double coulomb = 2.0 * kElementaryCharge / (4.0 * kPi * kEpsilon0 * d * d);
  return coulomb * 2.0 / (1.0 + eps_r) / 1e3;
}

FieldSolution field_island_fd(const Geometry& g, const GridSpec& grid) {
  const double dims[] = {g.island_length, g.island_width, g.island_height,
                         g.waveguide_width, g.waveguide_height, g.distance};
  for (double v : dims) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kDomainError, "geometry dimensions must be positive");
    }
  }
  if (g.eps_waveguide < 1.0 || g.eps_substrate < 1.0 || g.eps_vacuum < 1.0) {
    throw Error(ErrorCode::kDomainError, "relative permittivities must be >= 1");
  }
  const double h = grid.spacing;
  if (!(h > 0.0) || h > g.distance / 8.0 * (1.0 + 1e-12)) {
    throw Error(ErrorCode::kGridTooCoarse,
                "grid spacing must not exceed d/8 = " + std::to_string(g.distance / 8.0));
  }
  if (g.island_height < h * (1.0 - 1e-12) ||
      0.5 * g.island_width < 0.5 * h || 0.5 * g.island_length < 0.5 * h) {
    throw Error(ErrorCode::kGridTooCoarse, "island not resolved by the grid");
  }

  const double extent =
      std::max({g.island_length, g.island_width, g.waveguide_width,
                g.waveguide_height + g.distance + g.island_height});
  const double side = grid.box_factor * extent;
  Domain dom;
  dom.h = h;
  dom.nx = dom.ny = round_up(0.5 * side / h, kMultiple);
  dom.nz = round_up(side / h, kMultiple);
  const double z_mid = 0.5 * (g.distance + g.island_height - g.waveguide_height);
  dom.z0 = std::floor((z_mid - 0.5 * dom.nz * h) / h) * h;

  auto fine = std::make_unique<Level>();
  Level& f = *fine;
  f.nx = dom.nx;
  f.ny = dom.ny;
  f.nz = dom.nz;
  f.h = h;
  std::vector<float> eps(f.cells());
  f.fixed.assign(f.cells(), 0);
  std::size_t island_cells = 0;
  for (int k = 0; k < f.nz; ++k)
    for (int j = 0; j < f.ny; ++j)
      for (int i = 0; i < f.nx; ++i) {
        const Point3 p = dom.center(i, j, k);
        eps[f.idx(i, j, k)] = float(permittivity(g, p));
        if (in_island(g, p)) {
          f.fixed[f.idx(i, j, k)] = 1;
          ++island_cells;
        }
      }
  if (island_cells == 0) {
    throw Error(ErrorCode::kGridTooCoarse, "island covers no grid cell");
  }
  auto harmonic = [](float a, float b) { return 2.0f * a * b / (a + b); };
  f.kx.assign(std::size_t(f.nx + 1) * f.ny * f.nz, 0.0f);
  f.ky.assign(std::size_t(f.nx) * (f.ny + 1) * f.nz, 0.0f);
  f.kz.assign(std::size_t(f.nx) * f.ny * (f.nz + 1), 0.0f);
  for (int k = 0; k < f.nz; ++k)
    for (int j = 0; j < f.ny; ++j) {
      for (int i = 1; i < f.nx; ++i)
        f.kx[f.fx(i, j, k)] = harmonic(eps[f.idx(i - 1, j, k)], eps[f.idx(i, j, k)]);
      f.kx[f.fx(f.nx, j, k)] = 2.0f * eps[f.idx(f.nx - 1, j, k)];
    }
  for (int k = 0; k < f.nz; ++k)
    for (int i = 0; i < f.nx; ++i) {
      for (int j = 1; j < f.ny; ++j)
        f.ky[f.fy(i, j, k)] = harmonic(eps[f.idx(i, j - 1, k)], eps[f.idx(i, j, k)]);
      f.ky[f.fy(i, f.ny, k)] = 2.0f * eps[f.idx(i, f.ny - 1, k)];
    }
  for (int j = 0; j < f.ny; ++j)
    for (int i = 0; i < f.nx; ++i) {
      for (int k = 1; k < f.nz; ++k)
        f.kz[f.fz(i, j, k)] = harmonic(eps[f.idx(i, j, k - 1)], eps[f.idx(i, j, k)]);
      f.kz[f.fz(i, j, 0)] = 2.0f * eps[f.idx(i, j, 0)];
      f.kz[f.fz(i, j, f.nz)] = 2.0f * eps[f.idx(i, j, f.nz - 1)];
    }
  eps.clear();
  eps.shrink_to_fit();
  f.finish();

  // Island at unit potential: fixed neighbours move to the right-hand side.
  const std::size_t n = f.cells();
  std::vector<double> ones(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) ones[c] = f.fixed[c] ? 1.0 : 0.0;
  std::vector<double> rhs(n, 0.0);
  {
    const std::size_t plane = std::size_t(f.nx) * f.ny;
    for (int k = 0; k < f.nz; ++k)
      for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i) {
          const std::size_t c = f.idx(i, j, k);
          if (f.fixed[c]) continue;
          double s = 0.0;
          if (i > 0) s += f.kx[f.fx(i, j, k)] * ones[c - 1];
          if (i < f.nx - 1) s += f.kx[f.fx(i + 1, j, k)] * ones[c + 1];
          if (j > 0) s += f.ky[f.fy(i, j, k)] * ones[c - f.nx];
          if (j < f.ny - 1) s += f.ky[f.fy(i, j + 1, k)] * ones[c + f.nx];
          if (k > 0) s += f.kz[f.fz(i, j, k)] * ones[c - plane];
          if (k < f.nz - 1) s += f.kz[f.fz(i, j, k + 1)] * ones[c + plane];
          rhs[c] = h * s;
        }
  }

  Multigrid mg(std::move(fine));
  Level& lv = mg.fine();
  // Local potential correction 6 |r| / (h diag) approximates h^2 |lap phi|.
  auto scaled_residual = [&](const std::vector<double>& r) {
    double m = 0.0;
    for (std::size_t c = 0; c < n; ++c)
      if (!lv.fixed[c] && lv.diag[c] > 0.0)
        m = std::max(m, 6.0 * std::abs(r[c]) / (h * lv.diag[c]));
    return m;
  };
  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t c = 0; c < n; ++c) s += a[c] * b[c];
    return s;
  };

  std::vector<double> phi(n, 0.0), r = rhs, z(n), p(n), q(n);
  mg.precondition(r, z);
  p = z;
  double rz = dot(r, z);
  double res = scaled_residual(r);
  int it = 0;
  while (res > grid.tol && it < grid.max_iterations) {
    lv.apply(p, q);
    const double alpha = rz / dot(p, q);
    for (std::size_t c = 0; c < n; ++c) {
      phi[c] += alpha * p[c];
      r[c] -= alpha * q[c];
    }
    ++it;
    res = scaled_residual(r);
    if (res <= grid.tol) break;
    mg.precondition(r, z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t c = 0; c < n; ++c) p[c] = z[c] + beta * p[c];
  }
  if (!(res <= grid.tol)) {
    throw Error(ErrorCode::kNonConvergence,
                "Laplace residual " + std::to_string(res) + " after " +
                    std::to_string(it) + " iterations");
  }

  // Outward flux from the island through the faces of the quarter domain.
  double flux = 0.0;
  {
    const std::size_t plane = std::size_t(f.nx) * f.ny;
    for (int k = 0; k < lv.nz; ++k)
      for (int j = 0; j < lv.ny; ++j)
        for (int i = 0; i < lv.nx; ++i) {
          const std::size_t c = lv.idx(i, j, k);
          if (!lv.fixed[c]) continue;
          auto add = [&](bool ok, float kf, std::size_t nb) {
            if (ok && !lv.fixed[nb]) flux += kf * (1.0 - phi[nb]);
          };
          add(i > 0, lv.kx[lv.fx(i, j, k)], c - 1);
          add(i < lv.nx - 1, lv.kx[lv.fx(i + 1, j, k)], c + 1);
          add(j > 0, lv.ky[lv.fy(i, j, k)], c - lv.nx);
          add(j < lv.ny - 1, lv.ky[lv.fy(i, j + 1, k)], c + lv.nx);
          add(k > 0, lv.kz[lv.fz(i, j, k)], c - plane);
          add(k < lv.nz - 1, lv.kz[lv.fz(i, j, k + 1)], c + plane);
        }
  }
  // Flux sum is in units of eps0 * V * nm per quarter.
  const double charge_per_volt = 4.0 * flux * h * 1e-9 * kEpsilon0;
  const double volts = 2.0 * kElementaryCharge / charge_per_volt;
  for (std::size_t c = 0; c < n; ++c) phi[c] = (lv.fixed[c] ? 1.0 : phi[c]) * volts;

  FieldSolution out;
  out.island_voltage = volts;
  out.residual = res;
  out.iterations = it;
  out.cells = {dom.nx, dom.ny, dom.nz};
  const MoleculePosition all[] = {MoleculePosition::kNearEdge,
                                  MoleculePosition::kCenter,
                                  MoleculePosition::kFarEdge};
  for (int i = 0; i < 3; ++i)
    out.field_by_position[i] = field_at(dom, phi, molecule_coordinates(g, all[i]));
  const Point3 target = g.molecule ? *g.molecule : molecule_coordinates(g, g.position);
  out.field_kv_m = field_at(dom, phi, target);
  return out;
}

CouplingEstimate coupling_from_field(double field_kv_m, double dipole_debye) {
  CouplingEstimate c;
  c.stark_mhz = field_kv_m * kStarkMhzPerKvm * dipole_debye;
  c.first_principles_mhz =
      dipole_debye * kDebye * field_kv_m * 1e3 / kPlanck / 1e6;
  return c;
}

}  // namespace molqi
