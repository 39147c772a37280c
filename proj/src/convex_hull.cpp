#include "prolab/convex_hull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "prolab/error.hpp"

namespace prolab {

namespace {

using Int = std::int64_t;
using Wide = __int128;
using IPoint = std::array<Int, 3>;

// Coordinates are snapped to multiples of 2^-k chosen so that |coord| < 2^36;
// orientation determinants then fit in 128 bits and are exact.
constexpr int kGridBits = 36;

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

std::array<Wide, 3> sub(const IPoint& a, const IPoint& b) {
  return {Wide(a[0]) - b[0], Wide(a[1]) - b[1], Wide(a[2]) - b[2]};
}

std::array<Wide, 3> cross(const std::array<Wide, 3>& u, const std::array<Wide, 3>& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

struct Face {
  std::array<int, 3> v;
  std::array<Wide, 3> n;  // exact outward normal (b-a)x(c-a)
  double nd[3];           // unit normal, for ranking distances only
  double off;
  std::vector<int> outside;
  bool alive = true;
  int visit = -1;
};

class QuickHull {
 public:
  explicit QuickHull(std::span<const Vec3d> points) {
    double scale = 0.0;
    for (const auto& p : points) {
      if (!p.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite hull input");
      scale = std::max(scale, p.cwiseAbs().maxCoeff());
    }
    int e = 0;
    std::frexp(std::max(scale, 1e-300), &e);
    quantum_ = std::ldexp(1.0, e - kGridBits);
    pts_.reserve(points.size());
    for (const auto& p : points) {
      pts_.push_back({static_cast<Int>(std::llround(p(0) / quantum_)),
                      static_cast<Int>(std::llround(p(1) / quantum_)),
                      static_cast<Int>(std::llround(p(2) / quantum_))});
    }
  }

  Polyhedron run() {
    build_initial();
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      while (faces_[f].alive && !faces_[f].outside.empty()) expand(static_cast<int>(f));
    }
    return collect();
  }

 private:
  // Sign of the exact orientation of p against the face plane.
  int side(const Face& f, int p) const {
    const auto d = sub(pts_[p], pts_[f.v[0]]);
    const Wide s = f.n[0] * d[0] + f.n[1] * d[1] + f.n[2] * d[2];
    return (s > 0) - (s < 0);
  }

  double approx_distance(const Face& f, int p) const {
    const IPoint& q = pts_[p];
    return f.nd[0] * double(q[0]) + f.nd[1] * double(q[1]) + f.nd[2] * double(q[2]) - f.off;
  }

  int make_face(int a, int b, int c) {
    Face f;
    f.v = {a, b, c};
    f.n = cross(sub(pts_[b], pts_[a]), sub(pts_[c], pts_[a]));
    const long double nx = static_cast<long double>(f.n[0]);
    const long double ny = static_cast<long double>(f.n[1]);
    const long double nz = static_cast<long double>(f.n[2]);
    const long double len = std::sqrt(nx * nx + ny * ny + nz * nz);
    f.nd[0] = static_cast<double>(nx / len);
    f.nd[1] = static_cast<double>(ny / len);
    f.nd[2] = static_cast<double>(nz / len);
    f.off = f.nd[0] * double(pts_[a][0]) + f.nd[1] * double(pts_[a][1]) +
            f.nd[2] * double(pts_[a][2]);
    faces_.push_back(std::move(f));
    const int id = static_cast<int>(faces_.size()) - 1;
    for (int k = 0; k < 3; ++k) edges_[edge_key(faces_[id].v[k], faces_[id].v[(k + 1) % 3])] = id;
    return id;
  }

  void build_initial() {
    const int n = static_cast<int>(pts_.size());
    if (n < 4) throw Error(ErrorCode::InvalidArgument, "convex hull needs at least 4 points");
    int i0 = 0, i1 = 0;
    Int best = -1;
    for (int axis = 0; axis < 3; ++axis) {
      int lo = 0, hi = 0;
      for (int i = 1; i < n; ++i) {
        if (pts_[i][axis] < pts_[lo][axis]) lo = i;
        if (pts_[i][axis] > pts_[hi][axis]) hi = i;
      }
      if (pts_[hi][axis] - pts_[lo][axis] > best) {
        best = pts_[hi][axis] - pts_[lo][axis];
        i0 = lo;
        i1 = hi;
      }
    }
    if (best <= 0) throw Error(ErrorCode::InvalidArgument, "hull points coincide");

    auto norm2 = [](const std::array<Wide, 3>& v) {
      long double s = 0;
      for (Wide x : v) s += static_cast<long double>(x) * static_cast<long double>(x);
      return s;
    };
    const auto dir = sub(pts_[i1], pts_[i0]);
    int i2 = -1;
    long double far = 0;
    for (int i = 0; i < n; ++i) {
      const long double d = norm2(cross(dir, sub(pts_[i], pts_[i0])));
      if (d > far) {
        far = d;
        i2 = i;
      }
    }
    if (i2 < 0) throw Error(ErrorCode::InvalidArgument, "hull points are collinear");

    const auto plane = cross(dir, sub(pts_[i2], pts_[i0]));
    int i3 = -1;
    far = 0;
    Wide i3_side = 0;
    for (int i = 0; i < n; ++i) {
      const auto d = sub(pts_[i], pts_[i0]);
      const Wide s = plane[0] * d[0] + plane[1] * d[1] + plane[2] * d[2];
      const long double a = std::abs(static_cast<long double>(s));
      if (a > far) {
        far = a;
        i3 = i;
        i3_side = s;
      }
    }
    if (i3 < 0) throw Error(ErrorCode::InvalidArgument, "hull points are coplanar");

    if (i3_side > 0) std::swap(i1, i2);
    // i3 now lies strictly below the outward face (i0, i1, i2).
    make_face(i0, i1, i2);
    make_face(i0, i3, i1);
    make_face(i1, i3, i2);
    make_face(i2, i3, i0);

    for (int i = 0; i < n; ++i) {
      if (i == i0 || i == i1 || i == i2 || i == i3) continue;
      assign(i, 0, static_cast<int>(faces_.size()));
    }
  }

  void assign(int p, int first_face, int end_face) {
    for (int f = first_face; f < end_face; ++f) {
      if (faces_[f].alive && side(faces_[f], p) > 0) {
        faces_[f].outside.push_back(p);
        return;
      }
    }
  }

  void expand(int start) {
    int apex = -1;
    double far = -1.0;
    for (int p : faces_[start].outside) {
      const double d = approx_distance(faces_[start], p);
      if (d > far) {
        far = d;
        apex = p;
      }
    }

    ++stamp_;
    std::vector<int> visible{start};
    faces_[start].visit = stamp_;
    for (std::size_t k = 0; k < visible.size(); ++k) {
      const std::array<int, 3> v = faces_[visible[k]].v;
      for (int e = 0; e < 3; ++e) {
        const int nb = edges_.at(edge_key(v[(e + 1) % 3], v[e]));
        if (faces_[nb].visit == stamp_) continue;
        if (side(faces_[nb], apex) > 0) {
          faces_[nb].visit = stamp_;
          visible.push_back(nb);
        }
      }
    }
    std::vector<std::pair<int, int>> horizon;
    for (int fid : visible) {
      const std::array<int, 3> v = faces_[fid].v;
      for (int e = 0; e < 3; ++e) {
        const int nb = edges_.at(edge_key(v[(e + 1) % 3], v[e]));
        if (faces_[nb].visit != stamp_) horizon.emplace_back(v[e], v[(e + 1) % 3]);
      }
    }

    std::vector<int> orphans;
    for (int fid : visible) {
      Face& f = faces_[fid];
      f.alive = false;
      for (int e = 0; e < 3; ++e) edges_.erase(edge_key(f.v[e], f.v[(e + 1) % 3]));
      for (int p : f.outside)
        if (p != apex) orphans.push_back(p);
      std::vector<int>().swap(f.outside);
    }

    const int first_new = static_cast<int>(faces_.size());
    for (const auto& [a, b] : horizon) make_face(a, b, apex);
    const int end_new = static_cast<int>(faces_.size());
    for (int p : orphans) assign(p, first_new, end_new);
  }

  Polyhedron collect() const {
    Polyhedron out;
    std::unordered_map<int, int> remap;
    for (const Face& f : faces_) {
      if (!f.alive) continue;
      std::array<int, 3> tri{};
      for (int k = 0; k < 3; ++k) {
        auto [it, inserted] = remap.try_emplace(f.v[k], static_cast<int>(out.vertices.size()));
        if (inserted) {
          const IPoint& q = pts_[f.v[k]];
          out.vertices.emplace_back(double(q[0]) * quantum_, double(q[1]) * quantum_,
                                    double(q[2]) * quantum_);
        }
        tri[k] = it->second;
      }
      out.triangles.push_back(tri);
      const Vec3d normal(f.nd[0], f.nd[1], f.nd[2]);
      out.faces.push_back({-normal, f.off * quantum_});
    }
    return out;
  }

  std::vector<IPoint> pts_;
  double quantum_ = 1.0;
  std::vector<Face> faces_;
  std::unordered_map<std::uint64_t, int> edges_;
  int stamp_ = 0;
};

}  // namespace

Polyhedron convex_hull(std::span<const Vec3d> points) { return QuickHull(points).run(); }

double mesh_volume(const Polyhedron& p) {
  double v = 0.0;
  for (const auto& t : p.triangles) {
    v += p.vertices[t[0]].dot(p.vertices[t[1]].cross(p.vertices[t[2]]));
  }
  return v / 6.0;
}

Vec3d mesh_centroid(const Polyhedron& p) {
  double v = 0.0;
  Vec3d c = Vec3d::Zero();
  for (const auto& t : p.triangles) {
    const Vec3d& a = p.vertices[t[0]];
    const Vec3d& b = p.vertices[t[1]];
    const Vec3d& d = p.vertices[t[2]];
    const double w = a.dot(b.cross(d));
    v += w;
    c += w * (a + b + d) / 4.0;
  }
  return c / v;
}

}  // namespace prolab
