// Binary STL of a flat perforated slab.
//
// Each face is triangulated using only the slab and hole corners:
//   * four frame trapezoids between the outer edge and the hole grid's
//     bounding box, each fanned from an outer corner;
//   * one strip per gap between hole rows;
//   * one quad per gap between neighbouring holes in a row.
// That gives 2 + 6n triangles per face. Walls add 8 (outside) and 8 per
// hole, so the total is 12 + 20n and every edge is shared by two triangles.

#include <bit>
#include <cmath>
#include <cstring>
#include <ostream>

#include <fmt/format.h>

#include "cartilab/error.hpp"
#include "cartilab/lattice_layout.hpp"

namespace cartilab::layout {

namespace {

struct P2 {
  double x, y;
};

struct Tri {
  Vec3 a, b, c;
};

class Mesh {
 public:
  explicit Mesh(double height) : h_(height) {}

  // A face triangle, given in either winding. Emitted on the top face with
  // +z normal and on the bottom face with -z normal.
  void face(P2 a, P2 b, P2 c) {
    const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if (cross < 0.0) std::swap(b, c);
    tris_.push_back({{a.x, a.y, h_}, {b.x, b.y, h_}, {c.x, c.y, h_}});
    tris_.push_back({{a.x, a.y, 0.0}, {c.x, c.y, 0.0}, {b.x, b.y, 0.0}});
  }

  // Wall under boundary edge p -> q, material on the left of the edge.
  void wall(P2 p, P2 q) {
    const Vec3 p0{p.x, p.y, 0.0}, q0{q.x, q.y, 0.0}, q1{q.x, q.y, h_}, p1{p.x, p.y, h_};
    tris_.push_back({p0, q0, q1});
    tris_.push_back({p0, q1, p1});
  }

  const std::vector<Tri>& triangles() const { return tris_; }

 private:
  double h_;
  std::vector<Tri> tris_;
};

// Fan from `apex` over consecutive points of `chain`, then close to `other`.
void fan(Mesh& m, P2 apex, const std::vector<P2>& chain, P2 other) {
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) m.face(apex, chain[k], chain[k + 1]);
  m.face(apex, chain.back(), other);
}

Mesh build_mesh(const Layout& layout) {
  const auto* flat = std::get_if<FlatSurface>(&layout.surface);
  if (!flat) throw DomainError("STL export supports flat layouts only");
  if (layout.holes.empty()) throw DomainError("cannot export an empty layout");
  const int rows = layout.rows, cols = layout.cols;
  if (rows < 1 || cols < 1 || static_cast<std::size_t>(rows * cols) != layout.holes.size()) {
    throw DomainError("STL export needs a complete row-major grid");
  }
  // Everything in millimetres from here on.
  const double w = units::in_mm(flat->width), len = units::in_mm(flat->length);
  const double half = 0.5 * units::in_mm(layout.hole.side);
  std::vector<double> xl(cols), xr(cols), yb(rows), yt(rows);
  for (int i = 0; i < cols; ++i) {
    const double cx = layout.holes[i].center[0] * 1e3;
    xl[i] = cx - half;
    xr[i] = cx + half;
  }
  for (int j = 0; j < rows; ++j) {
    const double cy = layout.holes[static_cast<std::size_t>(j * cols)].center[1] * 1e3;
    yb[j] = cy - half;
    yt[j] = cy + half;
  }
  if (!(xl.front() > 0.0 && xr.back() < w && yb.front() > 0.0 && yt.back() < len)) {
    throw DomainError("holes must lie strictly inside the sheet for STL export");
  }
  for (int i = 0; i + 1 < cols; ++i) {
    if (!(xl[i + 1] > xr[i])) throw DomainError("holes touch; no material between columns");
  }
  for (int j = 0; j + 1 < rows; ++j) {
    if (!(yb[j + 1] > yt[j])) throw DomainError("holes touch; no material between rows");
  }

  Mesh m(units::in_mm(layout.hole.depth));
  const P2 o0{0, 0}, o1{w, 0}, o2{w, len}, o3{0, len};

  std::vector<P2> bottom, top, left, right;
  for (int i = 0; i < cols; ++i) {
    bottom.insert(bottom.end(), {{xl[i], yb.front()}, {xr[i], yb.front()}});
    top.insert(top.end(), {{xr[cols - 1 - i], yt.back()}, {xl[cols - 1 - i], yt.back()}});
  }
  for (int j = 0; j < rows; ++j) {
    right.insert(right.end(), {{xr.back(), yb[j]}, {xr.back(), yt[j]}});
    left.insert(left.end(), {{xl.front(), yt[rows - 1 - j]}, {xl.front(), yb[rows - 1 - j]}});
  }
  fan(m, o0, bottom, o1);
  fan(m, o1, right, o2);
  fan(m, o2, top, o3);
  fan(m, o3, left, o0);

  for (int j = 0; j + 1 < rows; ++j) {
    std::vector<double> xs;
    for (int i = 0; i < cols; ++i) xs.insert(xs.end(), {xl[i], xr[i]});
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      const P2 b0{xs[k], yt[j]}, b1{xs[k + 1], yt[j]};
      const P2 t0{xs[k], yb[j + 1]}, t1{xs[k + 1], yb[j + 1]};
      m.face(b0, b1, t1);
      m.face(b0, t1, t0);
    }
  }
  for (int j = 0; j < rows; ++j) {
    for (int i = 0; i + 1 < cols; ++i) {
      const P2 a{xr[i], yb[j]}, b{xl[i + 1], yb[j]}, c{xl[i + 1], yt[j]}, d{xr[i], yt[j]};
      m.face(a, b, c);
      m.face(a, c, d);
    }
  }

  m.wall(o0, o1);
  m.wall(o1, o2);
  m.wall(o2, o3);
  m.wall(o3, o0);
  for (int j = 0; j < rows; ++j) {
    for (int i = 0; i < cols; ++i) {
      const P2 bl{xl[i], yb[j]}, tl{xl[i], yt[j]}, tr{xr[i], yt[j]}, br{xr[i], yb[j]};
      m.wall(bl, tl);
      m.wall(tl, tr);
      m.wall(tr, br);
      m.wall(br, bl);
    }
  }
  return m;
}

template <typename T>
void put_le(std::ostream& out, T v) {
  static_assert(sizeof(T) == 4);
  auto bits = std::bit_cast<std::uint32_t>(v);
  if constexpr (std::endian::native == std::endian::big) {
    bits = ((bits & 0xFFu) << 24) | ((bits & 0xFF00u) << 8) | ((bits >> 8) & 0xFF00u) |
           (bits >> 24);
  }
  char buf[4];
  std::memcpy(buf, &bits, 4);
  out.write(buf, 4);
}

}  // namespace

std::uint32_t stl_triangle_count(const Layout& layout) {
  return static_cast<std::uint32_t>(12 + 20 * layout.holes.size());
}

void write_stl(const Layout& layout, std::ostream& out) {
  const Mesh mesh = build_mesh(layout);
  const auto& tris = mesh.triangles();
  if (tris.size() != stl_triangle_count(layout)) {
    throw Error(fmt::format("tessellation produced {} triangles, expected {}", tris.size(),
                            stl_triangle_count(layout)));
  }
  char header[80] = {};
  const std::string title = fmt::format("cartilab slab {}x{} holes, mm", layout.cols, layout.rows);
  std::memcpy(header, title.data(), std::min<std::size_t>(title.size(), sizeof header));
  out.write(header, sizeof header);
  put_le(out, static_cast<std::uint32_t>(tris.size()));
  for (const auto& t : tris) {
    const Vec3 u{t.b[0] - t.a[0], t.b[1] - t.a[1], t.b[2] - t.a[2]};
    const Vec3 v{t.c[0] - t.a[0], t.c[1] - t.a[1], t.c[2] - t.a[2]};
    Vec3 n{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
    const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    for (auto& c : n) c = norm > 0.0 ? c / norm + 0.0 : 0.0;
    for (double c : n) put_le(out, static_cast<float>(c));
    for (const Vec3* p : {&t.a, &t.b, &t.c}) {
      for (double c : *p) put_le(out, static_cast<float>(c));
    }
    const char attr[2] = {0, 0};
    out.write(attr, 2);
  }
}

}  // namespace cartilab::layout
