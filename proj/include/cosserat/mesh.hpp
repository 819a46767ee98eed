#ifndef COSSERAT_MESH_HPP
#define COSSERAT_MESH_HPP

// Conforming 2d grids of quadrilaterals/triangles over the parameter
// domain, Lagrange node management, element geometry maps, and boundary
// tagging.  Lengths are in mm.

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cosserat/errors.hpp"

namespace cosserat::mesh {

using Eigen::Vector2d;

struct Grid {
  struct Element {
    std::array<int, 4> v{-1, -1, -1, -1}; // counterclockwise vertex ids
    int nv = 4;
    bool is_quad() const { return nv == 4; }
  };
  struct BoundaryEdge {
    int a = -1;
    int b = -1;
    std::string tag;
  };

  std::vector<Vector2d> vertices;
  std::vector<Element> elements;
  std::vector<BoundaryEdge> boundary_segments;
};

struct GeometryJet {
  Vector2d x = Vector2d::Zero();
  Eigen::Matrix2d jacobian = Eigen::Matrix2d::Zero();
  double det = 0.0;
};

/// Bilinear (quads) or affine (triangles) map from the reference element
/// into the plane.  Throws DegenerateElementError when det J <= 0.
GeometryJet geometry_map(const Grid& grid, int element, const Vector2d& xi);

struct LagrangeNodeSet {
  int order = 1;
  std::vector<Vector2d> nodes;
  std::vector<std::vector<int>> element_nodes; // per element: local -> global
};

/// Global Lagrange node numbering with vertex/edge sharing; p in {1,2}.
LagrangeNodeSet lagrange_nodes(const Grid& grid, int order);

/// Owning element and local edge index for every boundary segment.
struct BoundaryEdgeRef {
  int segment = -1;
  int element = -1;
  int local_edge = -1;
};
std::vector<BoundaryEdgeRef> locate_boundary_edges(const Grid& grid);

/// Local vertex pair of an element edge (counterclockwise order).
std::array<int, 2> local_edge_vertices(const Grid::Element& e, int local_edge);

/// nx x ny axis-aligned quadrilaterals covering origin + [0,Lx] x [0,Ly].
/// Boundary tags: left, right, bottom, top.
Grid structured_quad_grid(const Vector2d& extent, int nx, int ny,
                          const Vector2d& origin = Vector2d::Zero());

/// The 99-element quadrilateral mesh of the L-shaped domain: legs 30 mm
/// wide, outer size 240 mm x 240 mm, reentrant corner at (210, -15),
/// graded towards the corner.  Tags: gamma0 (clamped end at x = 0),
/// gammas (loaded end at y = -225), free elsewhere.
Grid l_shape_grid();

/// Per-tag boundary condition description consumed by the shell setup.
struct BoundaryConditionSpec {
  enum class Kind { Free, Clamped, Neumann };
  struct PerTag {
    Kind kind = Kind::Free;
    // Clamped: prescribed midsurface position and unit director.
    std::function<Eigen::Vector3d(const Vector2d&)> displacement;
    std::function<Eigen::Vector3d(const Vector2d&)> director;
    // Neumann: traction N (N/mm) and couple M_c (N), constant per tag.
    Eigen::Vector3d traction = Eigen::Vector3d::Zero();
    Eigen::Vector3d couple = Eigen::Vector3d::Zero();
  };
  std::map<std::string, PerTag> tags;
};

// ASCII mesh format, bit-exact:
//   gfe-mesh 1
//   <nv> <ne> <nb>
//   nv lines "x y", ne lines "quad i0 i1 i2 i3" or "tri i0 i1 i2",
//   nb lines "<a> <b> <tag>".
void write_mesh(const Grid& grid, std::ostream& out);
void write_mesh(const Grid& grid, const std::string& path);
Grid read_mesh(std::istream& in);
Grid read_mesh(const std::string& path);

} // namespace cosserat::mesh

#endif
