#pragma once

#include <array>
#include <optional>
#include <string>

namespace molqi {

enum class MoleculePosition { kNearEdge, kCenter, kFarEdge };

const char* molecule_position_name(MoleculePosition pos);

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Cross-section geometry in nm. The waveguide runs along y with its top
// surface at z = 0; the island sits a distance d above it, centred over the
// waveguide, and the cladding fills z < d outside the waveguide.
struct Geometry {
  double island_length = 700.0;  // along y
  double island_width = 300.0;   // along x
  double island_height = 25.0;
  double waveguide_width = 700.0;
  double waveguide_height = 200.0;
  double distance = 125.0;
  double eps_waveguide = 2.3;
  double eps_substrate = 3.9;
  double eps_vacuum = 1.0;
  MoleculePosition position = MoleculePosition::kNearEdge;
  // Replaces the labelled position when set.
  std::optional<Point3> molecule;
  // Depth of the near- and far-edge molecules inside the waveguide.
  double edge_inset = 25.0;
};

Point3 molecule_coordinates(const Geometry& g, MoleculePosition pos);

struct GridSpec {
  double spacing = 12.5;  // nm
  // Side of the grounded box relative to the largest geometry extent.
  double box_factor = 5.0;
  // Bound on h^2 |laplacian phi| relative to the island potential.
  double tol = 1e-8;
  int max_iterations = 300;
};

struct FieldSolution {
  double field_kv_m = 0.0;  // at the selected molecule position
  std::array<double, 3> field_by_position{};  // near, center, far
  double island_voltage = 0.0;  // potential carrying charge 2e
  double residual = 0.0;        // achieved h^2 |laplacian phi| / V
  int iterations = 0;
  std::array<int, 3> cells{};   // quarter-domain grid size
};

// Field of a 2e point charge at distance d_nm from the surface of a
// dielectric half-space, in kV/m.
double field_point_charge(double d_nm, double eps_r);

// Finite-volume Laplace solve with the island held at a uniform potential
// rescaled so that it carries 2e. Throws GridTooCoarse, NonConvergence.
FieldSolution field_island_fd(const Geometry& g, const GridSpec& grid = {});

struct CouplingEstimate {
  double stark_mhz = 0.0;             // 5 MHz/(kV/m) per Debye
  double first_principles_mhz = 0.0;  // dipole * field / h
};

CouplingEstimate coupling_from_field(double field_kv_m, double dipole_debye);

}  // namespace molqi
