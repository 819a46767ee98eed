#include "cosserat/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cosserat::mesh {

namespace {

std::array<int, 2> sorted_pair(int a, int b) {
  return a < b ? std::array<int, 2>{a, b} : std::array<int, 2>{b, a};
}

// Breakpoints from a to b with n geometrically graded intervals; the
// interval adjacent to `fine_end` (a or b) is the smallest, with the given
// size.  The growth ratio is solved so the sizes sum to |b - a|.
std::vector<double> graded_breakpoints(double a, double b, int n, double fine_size,
                                       bool fine_at_b) {
  const double L = std::abs(b - a);
  const double target = L / fine_size;
  // Solve sum_{k=0}^{n-1} r^k = target for r >= 1 by bisection.
  double lo = 1.0, hi = 2.0;
  auto total = [&](double r) {
    double s = 0.0, p = 1.0;
    for (int k = 0; k < n; ++k) {
      s += p;
      p *= r;
    }
    return s;
  };
  while (total(hi) < target)
    hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (total(mid) < target ? lo : hi) = mid;
  }
  const double r = 0.5 * (lo + hi);
  std::vector<double> sizes(n);
  double p = fine_size;
  for (int k = 0; k < n; ++k) {
    sizes[k] = p;
    p *= r;
  }
  const double sum = std::accumulate(sizes.begin(), sizes.end(), 0.0);
  for (double& s : sizes)
    s *= L / sum;
  // Accumulate from the fine end, then orient ascending.
  std::vector<double> pts(n + 1);
  if (fine_at_b) {
    pts[n] = b;
    double x = b;
    for (int k = 0; k < n; ++k) {
      x -= sizes[k];
      pts[n - 1 - k] = x;
    }
    pts[0] = a;
  } else {
    pts[0] = a;
    double x = a;
    for (int k = 0; k < n; ++k) {
      x += sizes[k];
      pts[k + 1] = x;
    }
    pts[n] = b;
  }
  return pts;
}

} // namespace

GeometryJet geometry_map(const Grid& grid, int element, const Vector2d& xi) {
  const Grid::Element& e = grid.elements.at(element);
  GeometryJet jet;
  if (e.is_quad()) {
    const Vector2d& v0 = grid.vertices[e.v[0]];
    const Vector2d& v1 = grid.vertices[e.v[1]];
    const Vector2d& v2 = grid.vertices[e.v[2]];
    const Vector2d& v3 = grid.vertices[e.v[3]];
    const double s = xi[0], t = xi[1];
    jet.x = (1 - s) * (1 - t) * v0 + s * (1 - t) * v1 + s * t * v2 + (1 - s) * t * v3;
    jet.jacobian.col(0) = (1 - t) * (v1 - v0) + t * (v2 - v3);
    jet.jacobian.col(1) = (1 - s) * (v3 - v0) + s * (v2 - v1);
  } else {
    const Vector2d& v0 = grid.vertices[e.v[0]];
    const Vector2d& v1 = grid.vertices[e.v[1]];
    const Vector2d& v2 = grid.vertices[e.v[2]];
    jet.x = v0 + xi[0] * (v1 - v0) + xi[1] * (v2 - v0);
    jet.jacobian.col(0) = v1 - v0;
    jet.jacobian.col(1) = v2 - v0;
  }
  jet.det = jet.jacobian.determinant();
  if (jet.det <= 0.0)
    throw DegenerateElementError("geometry map has nonpositive Jacobian determinant");
  return jet;
}

std::array<int, 2> local_edge_vertices(const Grid::Element& e, int local_edge) {
  if (e.is_quad()) {
    static constexpr std::array<std::array<int, 2>, 4> edges{
        {{0, 1}, {1, 2}, {2, 3}, {3, 0}}};
    return edges.at(local_edge);
  }
  static constexpr std::array<std::array<int, 2>, 3> edges{{{0, 1}, {1, 2}, {2, 0}}};
  return edges.at(local_edge);
}

LagrangeNodeSet lagrange_nodes(const Grid& grid, int order) {
  if (order != 1 && order != 2)
    throw DomainError("lagrange_nodes supports orders 1 and 2");
  LagrangeNodeSet set;
  set.order = order;
  set.nodes = grid.vertices;
  set.element_nodes.resize(grid.elements.size());
  if (order == 1) {
    for (size_t k = 0; k < grid.elements.size(); ++k) {
      const Grid::Element& e = grid.elements[k];
      set.element_nodes[k].assign(e.v.begin(), e.v.begin() + e.nv);
    }
    return set;
  }
  std::map<std::array<int, 2>, int> edge_node;
  for (size_t k = 0; k < grid.elements.size(); ++k) {
    const Grid::Element& e = grid.elements[k];
    std::vector<int>& local = set.element_nodes[k];
    local.assign(e.v.begin(), e.v.begin() + e.nv);
    const int n_edges = e.is_quad() ? 4 : 3;
    for (int s = 0; s < n_edges; ++s) {
      const auto lv = local_edge_vertices(e, s);
      const auto key = sorted_pair(e.v[lv[0]], e.v[lv[1]]);
      auto [it, inserted] = edge_node.try_emplace(key, static_cast<int>(set.nodes.size()));
      if (inserted)
        set.nodes.push_back(0.5 * (grid.vertices[key[0]] + grid.vertices[key[1]]));
      local.push_back(it->second);
    }
    if (e.is_quad()) {
      local.push_back(static_cast<int>(set.nodes.size()));
      set.nodes.push_back(geometry_map(grid, static_cast<int>(k), Vector2d(0.5, 0.5)).x);
    }
  }
  return set;
}

std::vector<BoundaryEdgeRef> locate_boundary_edges(const Grid& grid) {
  std::map<std::array<int, 2>, std::pair<int, int>> owner;
  for (size_t k = 0; k < grid.elements.size(); ++k) {
    const Grid::Element& e = grid.elements[k];
    const int n_edges = e.is_quad() ? 4 : 3;
    for (int s = 0; s < n_edges; ++s) {
      const auto lv = local_edge_vertices(e, s);
      owner[sorted_pair(e.v[lv[0]], e.v[lv[1]])] = {static_cast<int>(k), s};
    }
  }
  std::vector<BoundaryEdgeRef> refs;
  refs.reserve(grid.boundary_segments.size());
  for (size_t b = 0; b < grid.boundary_segments.size(); ++b) {
    const auto key = sorted_pair(grid.boundary_segments[b].a, grid.boundary_segments[b].b);
    auto it = owner.find(key);
    if (it == owner.end())
      throw DomainError("boundary segment does not match any element edge");
    refs.push_back({static_cast<int>(b), it->second.first, it->second.second});
  }
  return refs;
}

Grid structured_quad_grid(const Vector2d& extent, int nx, int ny, const Vector2d& origin) {
  if (nx < 1 || ny < 1)
    throw InvalidResolutionError("structured grid needs nx, ny >= 1");
  Grid grid;
  const double dx = extent[0] / nx;
  const double dy = extent[1] / ny;
  grid.vertices.reserve((nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      grid.vertices.emplace_back(origin[0] + i * dx, origin[1] + j * dy);
  auto vid = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      Grid::Element e;
      e.v = {vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)};
      grid.elements.push_back(e);
    }
  for (int i = 0; i < nx; ++i) {
    grid.boundary_segments.push_back({vid(i, 0), vid(i + 1, 0), "bottom"});
    grid.boundary_segments.push_back({vid(i, ny), vid(i + 1, ny), "top"});
  }
  for (int j = 0; j < ny; ++j) {
    grid.boundary_segments.push_back({vid(0, j), vid(0, j + 1), "left"});
    grid.boundary_segments.push_back({vid(nx, j), vid(nx, j + 1), "right"});
  }
  return grid;
}

Grid l_shape_grid() {
  // Horizontal band: 15 graded columns on [0, 210] plus the three
  // 10 mm corner columns, three 10 mm rows on [-15, 15].  Vertical
  // band: three corner columns, 15 graded rows on [-225, -15].
  std::vector<double> xa = graded_breakpoints(0.0, 210.0, 15, 10.0, true);
  xa.insert(xa.end(), {220.0, 230.0, 240.0});
  const std::vector<double> ya = {-15.0, -5.0, 5.0, 15.0};
  const std::vector<double> xb = {210.0, 220.0, 230.0, 240.0};
  std::vector<double> yb = graded_breakpoints(-225.0, -15.0, 15, 10.0, true);

  Grid grid;
  std::map<std::pair<double, double>, int> index;
  auto vertex = [&](double x, double y) {
    auto [it, inserted] = index.try_emplace({x, y}, static_cast<int>(grid.vertices.size()));
    if (inserted)
      grid.vertices.emplace_back(x, y);
    return it->second;
  };
  auto add_block = [&](const std::vector<double>& xs, const std::vector<double>& ys) {
    for (size_t j = 0; j + 1 < ys.size(); ++j)
      for (size_t i = 0; i + 1 < xs.size(); ++i) {
        Grid::Element e;
        e.v = {vertex(xs[i], ys[j]), vertex(xs[i + 1], ys[j]),
               vertex(xs[i + 1], ys[j + 1]), vertex(xs[i], ys[j + 1])};
        grid.elements.push_back(e);
      }
  };
  add_block(xa, ya);
  add_block(xb, yb);

  // Boundary edges: every element edge used exactly once.
  std::map<std::array<int, 2>, int> edge_count;
  for (const Grid::Element& e : grid.elements)
    for (int s = 0; s < 4; ++s) {
      const auto lv = local_edge_vertices(e, s);
      edge_count[sorted_pair(e.v[lv[0]], e.v[lv[1]])]++;
    }
  for (const auto& [key, count] : edge_count) {
    if (count != 1)
      continue;
    const Vector2d& a = grid.vertices[key[0]];
    const Vector2d& b = grid.vertices[key[1]];
    std::string tag = "free";
    if (std::abs(a[0]) < 1e-9 && std::abs(b[0]) < 1e-9)
      tag = "gamma0";
    else if (std::abs(a[1] + 225.0) < 1e-9 && std::abs(b[1] + 225.0) < 1e-9)
      tag = "gammas";
    grid.boundary_segments.push_back({key[0], key[1], tag});
  }
  return grid;
}

void write_mesh(const Grid& grid, std::ostream& out) {
  out << "gfe-mesh 1\n";
  out << grid.vertices.size() << ' ' << grid.elements.size() << ' '
      << grid.boundary_segments.size() << '\n';
  char buf[64];
  for (const Vector2d& v : grid.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v[0], v[1]);
    out << buf;
  }
  for (const Grid::Element& e : grid.elements) {
    if (e.is_quad())
      out << "quad " << e.v[0] << ' ' << e.v[1] << ' ' << e.v[2] << ' ' << e.v[3] << '\n';
    else
      out << "tri " << e.v[0] << ' ' << e.v[1] << ' ' << e.v[2] << '\n';
  }
  for (const Grid::BoundaryEdge& b : grid.boundary_segments)
    out << b.a << ' ' << b.b << ' ' << b.tag << '\n';
}

void write_mesh(const Grid& grid, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot open mesh file for writing: " + path);
  write_mesh(grid, out);
}

Grid read_mesh(std::istream& in) {
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "gfe-mesh" || version != 1)
    throw IoError("not a gfe-mesh version 1 file");
  size_t nv = 0, ne = 0, nb = 0;
  in >> nv >> ne >> nb;
  Grid grid;
  grid.vertices.resize(nv);
  for (size_t i = 0; i < nv; ++i)
    in >> grid.vertices[i][0] >> grid.vertices[i][1];
  grid.elements.resize(ne);
  for (size_t k = 0; k < ne; ++k) {
    std::string kind;
    in >> kind;
    Grid::Element& e = grid.elements[k];
    if (kind == "quad") {
      e.nv = 4;
      in >> e.v[0] >> e.v[1] >> e.v[2] >> e.v[3];
    } else if (kind == "tri") {
      e.nv = 3;
      in >> e.v[0] >> e.v[1] >> e.v[2];
    } else {
      throw IoError("unknown element kind: " + kind);
    }
  }
  grid.boundary_segments.resize(nb);
  for (size_t b = 0; b < nb; ++b)
    in >> grid.boundary_segments[b].a >> grid.boundary_segments[b].b >>
        grid.boundary_segments[b].tag;
  if (!in)
    throw IoError("truncated gfe-mesh file");
  return grid;
}

Grid read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open mesh file: " + path);
  return read_mesh(in);
}

} // namespace cosserat::mesh
