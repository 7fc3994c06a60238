#include "d4/monodromy.hpp"

#include <deque>
#include <map>
#include <numeric>

#include "d4/errors.hpp"

namespace d4 {

namespace {

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "SL(2,Z) entry overflow");
  return r;
}

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "SL(2,Z) entry overflow");
  return r;
}

void check_index(const Factorization& f, int i) {
  if (i < 1 || i > static_cast<int>(f.factors.size()))
    throw Error(ErrorKind::IndexOutOfRange, "factor index out of range");
}

// x a + y b = gcd(a, b) >= 0.
long long ext_gcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  long long x1, y1;
  const long long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

SL2Z conjugate(const SL2Z& p, const SL2Z& m, const SL2Z& p_inv) { return multiply(multiply(p, m), p_inv); }

}  // namespace

SL2Z multiply(const SL2Z& a, const SL2Z& b) {
  SL2Z r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = checked_add(checked_mul(a(i, 0), b(0, j)), checked_mul(a(i, 1), b(1, j)));
  return r;
}

SL2Z inverse(const SL2Z& a) {
  SL2Z r;
  r << a(1, 1), -a(0, 1), -a(1, 0), a(0, 0);
  return r;
}

const SL2Z& twist_A() {
  static const SL2Z a = (SL2Z() << 1, 1, 0, 1).finished();
  return a;
}

const SL2Z& twist_B() {
  static const SL2Z b = (SL2Z() << 1, 0, -1, 1).finished();
  return b;
}

I1Check is_I1_twist(const SL2Z& m) {
  I1Check c;
  if (m(0, 0) + m(1, 1) != 2 || m == SL2Z::Identity()) return c;
  // M - Id has rank one; its nonzero columns span the fixed line.
  long long p = m(0, 0) - 1, q = m(1, 0);
  if (p == 0 && q == 0) {
    p = m(0, 1);
    q = m(1, 1) - 1;
  }
  const long long g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (p < 0 || (p == 0 && q < 0)) {
    p = -p;
    q = -q;
  }
  c.is_I1 = true;
  c.eigenvector << p, q;
  return c;
}

SL2Z Factorization::product() const {
  SL2Z r = SL2Z::Identity();
  for (const SL2Z& m : factors) r = multiply(r, m);
  return r;
}

Factorization hurwitz_move(const Factorization& f, int i, int direction) {
  if (i < 1 || i >= static_cast<int>(f.factors.size()))
    throw Error(ErrorKind::IndexOutOfRange, "Hurwitz move index must satisfy 1 <= i < k");
  if (direction != 1 && direction != 2) throw Error(ErrorKind::Parse, "Hurwitz move direction must be 1 or 2");
  Factorization g = f;
  const SL2Z a = f.factors[i - 1], b = f.factors[i];
  if (direction == 1) {
    g.factors[i - 1] = b;
    g.factors[i] = conjugate(inverse(b), a, b);
  } else {
    g.factors[i - 1] = conjugate(a, b, inverse(a));
    g.factors[i] = a;
  }
  return g;
}

Factorization canonical_factorization() {
  return {{twist_B(), twist_A(), twist_B(), twist_A(), twist_B(), twist_A()}};
}

ConjugationForm conjugation_form(const Factorization& f) {
  ConjugationForm out{f, SL2Z::Identity()};
  if (f.factors.empty()) return out;
  const I1Check first = is_I1_twist(f.factors[0]);
  if (first.is_I1) {
    long long x, y;
    const long long p = first.eigenvector(0), q = first.eigenvector(1);
    ext_gcd(p, q, x, y);
    out.conjugator << x, y, -q, p;  // sends (p, q) to (1, 0)
  }
  SL2Z pinv = inverse(out.conjugator);
  for (SL2Z& m : out.form.factors) m = conjugate(out.conjugator, m, pinv);
  for (const SL2Z& m : out.form.factors) {
    const long long c = m(1, 0);
    if (c == 0) continue;
    const long long ac = c < 0 ? -c : c;
    const long long r = ((m(0, 0) % ac) + ac) % ac;
    const long long n = (r - m(0, 0)) / c;
    const SL2Z t = (SL2Z() << 1, n, 0, 1).finished(), tinv = (SL2Z() << 1, -n, 0, 1).finished();
    for (SL2Z& k : out.form.factors) k = conjugate(t, k, tinv);
    out.conjugator = multiply(t, out.conjugator);
    break;
  }
  return out;
}

bool conjugate_equivalent(const Factorization& f, const Factorization& g) {
  if (f.factors.size() != g.factors.size()) return false;
  return conjugation_form(f).form.factors == conjugation_form(g).form.factors;
}

namespace {

using Key = std::vector<long long>;

Key key_of(const Factorization& f) {
  Key k;
  for (const SL2Z& m : conjugation_form(f).form.factors) k.insert(k.end(), m.data(), m.data() + 4);
  return k;
}

}  // namespace

Normalization normalize(const Factorization& f, int max_depth) {
  if (f.factors.size() != 6) throw Error(ErrorKind::Parse, "normalize expects six factors");
  for (const SL2Z& m : f.factors)
    if (!is_I1_twist(m).is_I1) throw Error(ErrorKind::Parse, "every factor must be an I1 twist");
  if (f.product() != -SL2Z::Identity()) throw Error(ErrorKind::Parse, "factor product must be -Id");

  const Key target = key_of(canonical_factorization());
  struct Node {
    Factorization state;
    std::vector<HurwitzMove> moves;
  };
  std::map<Key, bool> seen;
  std::deque<Node> queue;
  seen[key_of(f)] = true;
  queue.push_back({f, {}});
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (key_of(node.state) == target) {
      Normalization n;
      n.moves = node.moves;
      n.normal = node.state;
      const SL2Z from = conjugation_form(node.state).conjugator;
      const SL2Z to = conjugation_form(canonical_factorization()).conjugator;
      n.conjugator = multiply(inverse(to), from);
      return n;
    }
    if (static_cast<int>(node.moves.size()) >= max_depth) continue;
    for (int i = 1; i < 6; ++i)
      for (int dir = 1; dir <= 2; ++dir) {
        Factorization next;
        try {
          next = hurwitz_move(node.state, i, dir);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::Overflow) throw;
          continue;
        }
        if (!seen.emplace(key_of(next), true).second) continue;
        std::vector<HurwitzMove> moves = node.moves;
        moves.push_back({i, dir});
        queue.push_back({std::move(next), std::move(moves)});
      }
  }
  throw Error(ErrorKind::Exhausted, "no Hurwitz path to the canonical factorization within the search depth");
}

bool vanishing_cycle_match(const Factorization& f, int i, int j, bool transport) {
  check_index(f, i);
  check_index(f, j);
  const I1Check ci = is_I1_twist(f.factors[i - 1]), cj = is_I1_twist(f.factors[j - 1]);
  if (!ci.is_I1 || !cj.is_I1) throw Error(ErrorKind::NotParabolic, "factor is not an I1 twist");
  if (i == j) return true;
  IVec2 vj = cj.eigenvector;
  if (transport) {
    SL2Z p = SL2Z::Identity();
    for (int k = std::min(i, j) + 1; k < std::max(i, j); ++k) p = multiply(p, f.factors[k - 1]);
    vj = p * vj;
  }
  return vj == ci.eigenvector || vj == -ci.eigenvector;
}

}  // namespace d4
