#include "d4/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "d4/chambers.hpp"

namespace d4 {

AffineIsometry AffineIsometry::compose(const AffineIsometry& h) const {
  AffineIsometry r;
  r.linear = linear * h.linear;
  r.translation = linear * h.translation + translation;
  r.word = word;
  r.word.insert(r.word.end(), h.word.begin(), h.word.end());
  return r;
}

AffineIsometry AffineIsometry::inverse() const {
  // linear is orthogonal, so its inverse is its transpose.
  AffineIsometry r;
  r.linear = linear.transpose();
  r.translation = -(r.linear * translation);
  r.word.assign(word.rbegin(), word.rend());  // generators are involutions
  return r;
}

namespace {

Face face_opposite(const std::array<Q4, 5>& v, int i) {
  std::vector<int> idx;
  for (int k = 0; k < 5; ++k)
    if (k != i) idx.push_back(k);
  ExactMatrix D(3, 4);
  for (int r = 0; r < 3; ++r) D.row(r) = (v[idx[r + 1]] - v[idx[0]]).transpose();
  const ExactMatrix ker = Eigen::FullPivLU<ExactMatrix>(D).kernel();
  Face f;
  f.normal = ker.col(0);
  f.offset = f.normal.dot(v[idx[0]]);
  if (f.value(v[i]) < 0) {
    f.normal = -f.normal;
    f.offset = -f.offset;
  }
  return f;
}

// x -> x - 2 (n.x - c)/(n.n) n
AffineIsometry reflection(const Face& f, int index) {
  const Rational nn = f.normal.dot(f.normal);
  AffineIsometry r;
  r.linear = Mat4<Rational>::Identity() - (2 / nn) * f.normal * f.normal.transpose();
  r.translation = (2 * f.offset / nn) * f.normal;
  r.word = {index};
  return r;
}

template <class FaceFn>
std::array<AffineIsometry, 5> reflections(FaceFn face) {
  std::array<AffineIsometry, 5> out;
  for (int i = 0; i < 5; ++i) out[i] = reflection(face(i), i);
  return out;
}

void check_index(int i) {
  if (i < 0 || i > 4) throw Error(ErrorKind::IndexOutOfRange, "generator index must be in 0..4");
}

}  // namespace

const std::array<Q4, 5>& model_vertices() {
  static const std::array<Q4, 5> v = [] {
    const Rational h(1, 2), q(1, 4);
    return std::array<Q4, 5>{Q4(q, q, q, q), Q4(0, 0, 0, 0), Q4(h, h, 0, 0), Q4(h, 0, h, 0), Q4(h, 0, 0, h)};
  }();
  return v;
}

const std::array<Q4, 5>& target_vertices() {
  static const std::array<Q4, 5> v{Q4::Zero(), Q4::Unit(0), Q4::Unit(1), Q4::Unit(2), Q4::Unit(3)};
  return v;
}

const Face& model_face(int i) {
  check_index(i);
  static const std::array<Face, 5> faces = [] {
    std::array<Face, 5> f;
    for (int k = 0; k < 5; ++k) f[k] = face_opposite(model_vertices(), k);
    return f;
  }();
  return faces[i];
}

const Face& target_face(int i) {
  check_index(i);
  static const std::array<Face, 5> faces = [] {
    std::array<Face, 5> f;
    for (int k = 0; k < 5; ++k) f[k] = face_opposite(target_vertices(), k);
    return f;
  }();
  return faces[i];
}

const AffineIsometry& generator(int i) {
  check_index(i);
  static const auto gens = reflections([](int k) { return model_face(k); });
  return gens[i];
}

const AffineIsometry& target_generator(int i) {
  check_index(i);
  static const auto gens = reflections([](int k) { return target_face(k); });
  return gens[i];
}

AffineIsometry word_action(const std::vector<int>& word) {
  AffineIsometry g;
  for (int i : word) g = g.compose(generator(i));
  return g;
}

AffineIsometry target_word_action(const std::vector<int>& word) {
  AffineIsometry g;
  for (int i : word) g = g.compose(target_generator(i));
  return g;
}

Mat4<GaussianRational> mass_action(const AffineIsometry& g) {
  Mat4<GaussianRational> M;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) M(r, c) = GaussianRational(g.linear(r, c));
  return M;
}

G4 apply_mass(const Mat4<GaussianRational>& M, const G4& m) {
  G4 out = G4::Constant(GaussianRational(0));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r) += M(r, c) * m(c);
  return out;
}

AlcoveWalk alcove_walk(const Q4& alpha) {
  AlcoveWalk w;
  Q4 x = alpha;
  for (;;) {
    int violated = -1;
    for (int i = 0; i < 5 && violated < 0; ++i)
      if (model_face(i).value(x) < 0) violated = i;
    if (violated < 0) break;
    x = generator(violated).apply(x);
    w.g = w.g.compose(generator(violated));
  }
  w.alpha0 = x;
  for (int i = 0; i < 5; ++i) w.on_wall = w.on_wall || model_face(i).value(x) == 0;
  return w;
}

namespace {

std::string key(const Q4& x) {
  std::string k;
  for (int i = 0; i < 4; ++i) k += format(x(i)) + ",";
  return k;
}

std::string key(const Mat4<Rational>& m) {
  std::string k;
  for (int i = 0; i < 16; ++i) k += format(m(i)) + ",";
  return k;
}

}  // namespace

const std::vector<AffineIsometry>& enumerate_W_fin() {
  static const std::vector<AffineIsometry> group = [] {
    std::vector<AffineIsometry> out{AffineIsometry{}};
    std::set<std::string> seen{key(out[0].linear)};
    for (std::size_t head = 0; head < out.size(); ++head) {
      for (int i : {0, 2, 3, 4}) {
        AffineIsometry g = out[head].compose(generator(i));
        if (seen.insert(key(g.linear)).second) out.push_back(std::move(g));
      }
    }
    return out;
  }();
  return group;
}

namespace {

// Orbits of the 16 cube vertices: breadth-first closure under r0..r4 inside
// the box [-1, 3/2]^4, which is large enough to connect equivalent vertices.
std::map<Subset, std::string> vertex_orbit_labels() {
  std::map<Subset, std::set<Subset>> classes;
  std::map<std::string, Subset> vertex_of;
  for (Subset J = 0; J < 16; ++J) vertex_of[key(cube_vertex(J))] = J;
  const Rational lo(-1), hi(3, 2);
  std::set<Subset> done;
  for (Subset J = 0; J < 16; ++J) {
    if (done.count(J)) continue;
    std::set<std::string> seen{key(cube_vertex(J))};
    std::deque<Q4> queue{cube_vertex(J)};
    std::set<Subset> members;
    while (!queue.empty()) {
      const Q4 x = queue.front();
      queue.pop_front();
      if (auto it = vertex_of.find(key(x)); it != vertex_of.end()) members.insert(it->second);
      for (int i = 0; i < 5; ++i) {
        const Q4 y = generator(i).apply(x);
        if ((y.array() < lo).any() || (y.array() > hi).any()) continue;
        if (seen.insert(key(y)).second) queue.push_back(y);
      }
    }
    done.insert(members.begin(), members.end());
    for (Subset m : members) classes[m] = members;
  }
  std::map<Subset, std::string> labels;
  for (const auto& [J, members] : classes) {
    if (std::all_of(members.begin(), members.end(), [](Subset s) { return cardinality(s) % 2 == 1; })) {
      labels[J] = "odd";
      continue;
    }
    std::vector<std::string> names;
    for (Subset s : members) {
      std::string n;
      for (int i = 1; i <= 4; ++i)
        if (contains(s, i)) n += static_cast<char>('0' + i);
      names.push_back(n.empty() ? "∅" : n);
    }
    std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
      if (a == "∅" || b == "∅") return a == "∅" && b != "∅";
      return a < b;
    });
    std::string label;
    for (const auto& n : names) label += (label.empty() ? "" : "/") + n;
    labels[J] = label;
  }
  return labels;
}

}  // namespace

std::string vertex_orbit(const Q4& v) {
  static const std::map<Subset, std::string> labels = vertex_orbit_labels();
  for (Subset J = 0; J < 16; ++J)
    if (cube_vertex(J) == v) return labels.at(J);
  throw Error(ErrorKind::NotAVertex, "not a vertex of [0,1/2]^4");
}

}  // namespace d4
