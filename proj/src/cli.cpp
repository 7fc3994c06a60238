#include "d4/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "d4/chambers.hpp"
#include "d4/coxeter.hpp"
#include "d4/homology.hpp"
#include "d4/hkmodel.hpp"
#include "d4/monodromy.hpp"
#include "d4/spectral.hpp"
#include "d4/torelli.hpp"

namespace d4::cli {

using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

template <class T, class F>
std::vector<T> parse_list(const std::string& s, std::size_t n, const char* what, F parse) {
  const std::vector<std::string> parts = split(s);
  if (parts.size() != n)
    throw Error(ErrorKind::Parse, std::string(what) + " expects " + std::to_string(n) + " comma-separated values");
  std::vector<T> out;
  for (const auto& p : parts) out.push_back(parse(p));
  return out;
}

Q4 parse_q4(const std::string& s, const char* what) {
  const auto v = parse_list<Rational>(s, 4, what, parse_rational);
  return Q4(v[0], v[1], v[2], v[3]);
}

G4 parse_g4(const std::string& s, const char* what) {
  const auto v = parse_list<GaussianRational>(s, 4, what, parse_gaussian);
  G4 g;
  for (int i = 0; i < 4; ++i) g(i) = v[i];
  return g;
}

cplx parse_complex(const std::string& s) { return to_complex(parse_gaussian(s)); }

template <class V>
json strings(const V& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(format(v(i)));
  return a;
}

template <class M>
json string_matrix(const M& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(format(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

template <class M>
json int_matrix(const M& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(static_cast<long long>(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json complex_matrix(const Eigen::Matrix2cd& m) {
  json rows = json::array();
  for (int r = 0; r < 2; ++r) rows.push_back(json::array({complex_json(m(r, 0)), complex_json(m(r, 1))}));
  return rows;
}

json label_json(const ChamberLabel& l) {
  json j{{"chamber", l.name()}, {"type", to_string(l.type)}, {"distinguished", l.distinguished}};
  if (!l.interior()) j["I0"] = subset_name(l.I0);
  json s = json::array();
  for (Subset J : l.set.subsets) s.push_back(subset_name(J));
  j["subsets"] = s;
  return j;
}

json periods_json(const PeriodVector& p) {
  return json{{"basis", p.basis_tag()}, {"x", strings(p.x)}, {"z", strings(p.z)},
              {"fiber_relations", p.fiber_relations_hold()}};
}

PeriodVector parse_periods(const std::string& xs, const std::string& zs) {
  const auto xv = parse_list<Rational>(xs, 5, "--x", parse_rational);
  const auto zv = parse_list<GaussianRational>(zs, 5, "--z", parse_gaussian);
  PeriodVector p;
  for (int j = 0; j < 5; ++j) {
    p.x(j) = xv[j];
    p.z(j) = zv[j];
  }
  return p;
}

std::optional<ChamberLabel> chamber_by_name(const std::string& name) {
  if (name.empty() || name == "parallel" || name == "parallel(model)") return std::nullopt;
  for (const ChamberLabel& l : all_chambers())
    if (l.name() == name) return l;
  throw Error(ErrorKind::Parse, "unknown basis " + name);
}

std::string read_text(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + arg.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
}

Factorization parse_factors(const std::string& s) {
  const json j = parse_json("[" + s + "]");
  Factorization f;
  for (const auto& m : j) {
    if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2)
      throw Error(ErrorKind::Parse, "each factor must be [[a,b],[c,d]]");
    SL2Z a;
    a << m[0][0].get<long long>(), m[0][1].get<long long>(), m[1][0].get<long long>(), m[1][1].get<long long>();
    if (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) != 1) throw Error(ErrorKind::Parse, "factor has determinant != 1");
    f.factors.push_back(a);
  }
  return f;
}

json factors_json(const Factorization& f) {
  json a = json::array();
  for (const SL2Z& m : f.factors) a.push_back(int_matrix(m));
  return a;
}

std::vector<int> parse_word(const std::string& s) {
  std::vector<int> w;
  if (s.empty()) return w;
  for (const auto& p : split(s)) {
    try {
      w.push_back(std::stoi(p));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "word entries must be integers");
    }
  }
  return w;
}

HitchinBase parse_base(const std::string& p0, const std::string& m) {
  const auto masses = parse_list<cplx>(m, 4, "--m", parse_complex);
  return build_base(parse_complex(p0), {masses[0], masses[1], masses[2], masses[3]});
}

// ---------------------------------------------------------------------------
// sweep

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string fmt_double(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::string json_scalar_string(const json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

Table sweep_alpha(const json& grid) {
  Table t;
  t.header = {"index", "alpha1", "alpha2", "alpha3", "alpha4", "chamber", "x0", "x1", "x2", "x3", "x4", "error"};
  const int n = grid.value("samples", 0);
  if (n <= 0) return t;
  auto vec = [&](const char* key) {
    const json& a = grid.at(key);
    std::string s;
    for (std::size_t k = 0; k < a.size(); ++k) s += (k ? "," : "") + json_scalar_string(a[k]);
    return s;
  };
  const Q4 from = parse_q4(vec("from"), "from"), to = parse_q4(vec("to"), "to");
  const G4 m = grid.contains("m") ? parse_g4(vec("m"), "m") : G4::Constant(GaussianRational(0));
  for (int k = 0; k < n; ++k) {
    const Rational s = n == 1 ? Rational(0) : Rational(k) / Rational(n - 1);
    ParabolicData d{from + (to - from) * s, m};
    std::vector<std::string> row{std::to_string(k)};
    for (int i = 0; i < 4; ++i) row.push_back(format(d.alpha(i)));
    try {
      const PeriodVector p = torelli_chamber(d);
      row.push_back(p.basis_tag());
      for (int j = 0; j < 5; ++j) row.push_back(format(p.x(j)));
      row.emplace_back();
    } catch (const Error& e) {
      row.push_back(e.kind() == ErrorKind::OnWall ? "wall" : "");
      for (int j = 0; j < 5; ++j) row.emplace_back();
      row.emplace_back(to_string(e.kind()));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table sweep_beta(const json& grid) {
  Table t;
  t.header = {"index", "beta_re", "beta_im", "tau_re", "tau_im", "tau_reduced_re", "tau_reduced_im", "dist_tau0",
              "error"};
  const int n = grid.value("samples", 0);
  if (n <= 0) return t;
  std::string m = "0,0,0,0";
  if (grid.contains("m")) {
    m.clear();
    for (std::size_t k = 0; k < grid["m"].size(); ++k) m += (k ? "," : "") + json_scalar_string(grid["m"][k]);
  }
  const std::string p0 = json_scalar_string(grid.at("p0"));
  const HitchinBase base = parse_base(p0, m);
  const cplx tau0 = reduce_tau(elliptic_periods(parse_base(p0, "0,0,0,0"), 1.0).tau);
  const double from = grid.value("from", 10.0), to = grid.value("to", 1e4), phase = grid.value("phase", 0.0);
  for (int k = 0; k < n; ++k) {
    const double s = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
    const cplx beta = from * std::pow(to / from, s) * std::polar(1.0, phase);
    std::vector<std::string> row{std::to_string(k), fmt_double(beta.real()), fmt_double(beta.imag())};
    try {
      const cplx tau = elliptic_periods(base, beta).tau, red = reduce_tau(tau);
      for (double v : {tau.real(), tau.imag(), red.real(), red.imag(), std::abs(red - tau0)})
        row.push_back(fmt_double(v));
      row.emplace_back();
    } catch (const Error& e) {
      for (int j = 0; j < 5; ++j) row.emplace_back();
      row.emplace_back(to_string(e.kind()));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table sweep(const json& grid) {
  const std::string kind = grid.is_object() ? grid.value("kind", std::string("alpha_segment")) : "alpha_segment";
  if (!grid.is_object()) return sweep_alpha(json::object());
  if (kind == "alpha_segment") return sweep_alpha(grid);
  if (kind == "beta_log") return sweep_beta(grid);
  throw Error(ErrorKind::Parse, "grid kind must be alpha_segment or beta_log");
}

// ---------------------------------------------------------------------------

struct Context {
  std::ostream& out;
  json input = json::object();
  std::string subcommand;
};

json echo_options(const CLI::App* app) {
  json in = json::object();
  for (const CLI::Option* o : app->get_options()) {
    if (o->get_name() == "--help" || o->count() == 0) continue;
    std::string name = o->get_name();
    while (!name.empty() && name[0] == '-') name.erase(0, 1);
    const auto& res = o->results();
    if (o->get_type_size() == 0)
      in[name] = true;
    else
      in[name] = res.size() == 1 ? json(res[0]) : json(res);
  }
  return in;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Torelli periods, chambers, Coxeter actions and spectral diagnostics for parabolic SU(2) Hitchin "
               "moduli on the four-punctured sphere", "d4"};
  app.require_subcommand(1);
  std::function<json()> action;
  std::string action_name;
  auto bind = [&](CLI::App* sub, std::string name, std::function<json()> f) {
    sub->callback([&action, &action_name, name, f] {
      action_name = name;
      action = f;
    });
  };

  // Options shared by several subcommands.
  std::string alpha, masses = "0,0,0,0", basis = "chamber", xs, zs, from_json;

  auto* chamber = app.add_subcommand("chamber", "Classify alpha into one of the 24 chambers");
  chamber->add_option("--alpha", alpha, "four rationals in (0,1/2)")->required();
  bind(chamber, "chamber", [&] { return label_json(classify_chamber(parse_q4(alpha, "--alpha"))); });

  auto* generic = app.add_subcommand("generic", "Genericity walls and membership in R~ / R~full");
  generic->add_option("--alpha", alpha, "four rationals")->required();
  generic->add_option("--m", masses, "four Gaussian rationals");
  bind(generic, "generic", [&] {
    const ParabolicData d{parse_q4(alpha, "--alpha"), parse_g4(masses, "--m")};
    json v = json::array();
    for (const auto& g : genericity_violations(d)) v.push_back(json{{"d", g.d}, {"e", g.e}});
    return json{{"generic", v.empty()}, {"violations", v}, {"in_R_tilde", in_R_tilde(d, false)},
                {"in_R_tilde_full", in_R_tilde(d, true)}};
  });

  auto* periods = app.add_subcommand("periods", "Periods x (4pi^2 units) and z (2pi units) over S0..S4");
  periods->add_option("--alpha", alpha, "four rationals")->required();
  periods->add_option("--m", masses, "four Gaussian rationals");
  periods->add_option("--basis", basis, "chamber or parallel")->check(CLI::IsMember({"chamber", "parallel"}));
  bind(periods, "periods", [&] {
    const ParabolicData d{parse_q4(alpha, "--alpha"), parse_g4(masses, "--m")};
    return periods_json(basis == "parallel" ? torelli_parallel(d) : torelli_chamber(d));
  });

  auto* invert = app.add_subcommand("invert", "Recover (alpha, m) from periods");
  std::string invert_basis = "parallel";
  invert->add_option("--x", xs, "five rationals x0..x4");
  invert->add_option("--z", zs, "five Gaussian rationals z0..z4");
  invert->add_option("--basis", invert_basis, "parallel or a chamber name such as B1_1");
  invert->add_option("--from-json", from_json, "output of `periods` (inline or @file)");
  bind(invert, "invert", [&] {
    PeriodVector p;
    if (!from_json.empty()) {
      const json j = parse_json(read_text(from_json));
      const json& r = j.contains("result") ? j["result"] : j;
      std::string x, z;
      for (std::size_t k = 0; k < r.at("x").size(); ++k) x += (k ? "," : "") + r["x"][k].get<std::string>();
      for (std::size_t k = 0; k < r.at("z").size(); ++k) z += (k ? "," : "") + r["z"][k].get<std::string>();
      p = parse_periods(x, z);
      p.chamber = chamber_by_name(r.value("basis", std::string("parallel")));
    } else {
      if (xs.empty() || zs.empty()) throw Error(ErrorKind::Parse, "invert needs --x and --z, or --from-json");
      p = parse_periods(xs, zs);
      p.chamber = chamber_by_name(invert_basis);
    }
    const ParabolicData d = inverse_torelli_chamber(p);
    return json{{"basis", p.basis_tag()}, {"alpha", strings(d.alpha)}, {"m", strings(d.masses)}};
  });

  auto* domain = app.add_subcommand("domain", "Membership of a period vector in the period domain");
  domain->add_option("--x", xs, "five rationals x0..x4");
  domain->add_option("--z", zs, "five Gaussian rationals z0..z4");
  domain->add_option("--alpha", alpha, "use the periods of (alpha, m) instead");
  domain->add_option("--m", masses, "four Gaussian rationals");
  domain->add_option("--basis", basis, "chamber or parallel, with --alpha")
      ->check(CLI::IsMember({"chamber", "parallel"}));
  bind(domain, "domain", [&] {
    PeriodVector p;
    if (!alpha.empty()) {
      const ParabolicData d{parse_q4(alpha, "--alpha"), parse_g4(masses, "--m")};
      p = basis == "parallel" ? torelli_parallel(d) : torelli_chamber(d);
    } else {
      if (xs.empty() || zs.empty()) throw Error(ErrorKind::Parse, "domain needs --x and --z, or --alpha");
      p = parse_periods(xs, zs);
    }
    const DomainCheck c = in_period_domain(p);
    json j{{"in_domain", c.in_domain}};
    j["witness"] = c.witness ? json(c.witness->name()) : json(nullptr);
    j["periods"] = periods_json(p);
    return j;
  });

  auto* coxeter = app.add_subcommand("coxeter", "Affine D4 Coxeter group actions");
  coxeter->require_subcommand(1);
  auto* walk = coxeter->add_subcommand("walk", "Alcove walk of alpha into the model alcove");
  walk->add_option("--alpha", alpha, "four rationals")->required();
  bind(walk, "coxeter walk", [&] {
    const AlcoveWalk w = alcove_walk(parse_q4(alpha, "--alpha"));
    return json{{"word", w.g.word}, {"alpha0", strings(w.alpha0)}, {"on_wall", w.on_wall},
                {"linear", string_matrix(w.g.linear)}, {"translation", strings(w.g.translation)}};
  });
  std::string vertex;
  auto* orbit = coxeter->add_subcommand("orbit", "Orbit class of a cube vertex");
  orbit->add_option("--vertex", vertex, "four entries in {0, 1/2}")->required();
  bind(orbit, "coxeter orbit", [&] { return json{{"orbit", vertex_orbit(parse_q4(vertex, "--vertex"))}}; });
  std::string word;
  auto* act = coxeter->add_subcommand("word", "Affine map of a word r_{w1} o ... o r_{wn}");
  act->add_option("--word", word, "comma-separated generator indices 0..4");
  act->add_option("--alpha", alpha, "optional point to transform");
  bind(act, "coxeter word", [&] {
    const AffineIsometry g = word_action(parse_word(word));
    json j{{"linear", string_matrix(g.linear)}, {"translation", strings(g.translation)}};
    if (!alpha.empty()) j["image"] = strings(g.apply(parse_q4(alpha, "--alpha")));
    return j;
  });
  auto* wfin = coxeter->add_subcommand("wfin", "Order of the finite Weyl group");
  bind(wfin, "coxeter wfin", [&] { return json{{"order", enumerate_W_fin().size()}}; });

  auto* homology = app.add_subcommand("homology", "Lattice automorphisms and -2 classes");
  homology->require_subcommand(1);
  auto* twist = homology->add_subcommand("twist", "Dehn-twist product A_{w1}...A_{wn} and its reduction");
  twist->add_option("--word", word, "comma-separated indices 0..4");
  bind(twist, "homology twist", [&] {
    const IMat5 A = word_to_auto(parse_word(word));
    const HatReduction h = hat_reduction(A);
    return json{{"matrix", int_matrix(A)}, {"lattice_auto", is_lattice_auto(A)},
                {"hat", json{{"A", string_matrix(h.A)}, {"b", strings(h.b)}}}};
  });
  int kmax = 2;
  auto* minus2 = homology->add_subcommand("minus2", "Classes of square -2");
  minus2->add_option("--kmax", kmax, "bound on |k|")->check(CLI::Range(0, 50));
  bind(minus2, "homology minus2", [&] {
    json a = json::array();
    for (const IVec5& v : classes_of_square_minus2(kmax)) a.push_back(std::vector<long long>(v.data(), v.data() + 5));
    return json{{"count", a.size()}, {"classes", a}};
  });

  auto* spectral = app.add_subcommand("spectral", "Spectral curves (m_inf z^2 + w)^2 = f + beta g");
  spectral->require_subcommand(1);
  std::string p0 = "1/2", beta = "1", u = "1/3";
  int sheet = 1;
  auto add_base = [&](CLI::App* s, bool with_beta) {
    s->add_option("--p0", p0, "third finite puncture (complex)");
    s->add_option("--m", masses, "masses m0,m1,m_p0,m_inf (complex)");
    if (with_beta) s->add_option("--beta", beta, "Hitchin base coordinate (complex)");
  };
  auto* fibers = spectral->add_subcommand("fibers", "Singular fibers: roots of the beta-discriminant");
  add_base(fibers, false);
  bind(fibers, "spectral fibers", [&] {
    const HitchinBase b = parse_base(p0, masses);
    const BetaDiscriminant d = beta_discriminant(b);
    json roots = json::array();
    for (cplx r : singular_fibers(b)) roots.push_back(complex_json(r));
    return json{{"roots", roots}, {"beta5_relative", d.beta5_relative()}, {"scale", d.scale()}};
  });
  auto* speriods = spectral->add_subcommand("periods", "Elliptic periods and tau");
  add_base(speriods, true);
  bind(speriods, "spectral periods", [&] {
    const HitchinBase b = parse_base(p0, masses);
    const cplx bt = parse_complex(beta);
    const EllipticPeriods e = elliptic_periods(b, bt);
    return json{{"in_B0", in_B0(b, bt)},          {"omega_A", complex_json(e.omega_A)},
                {"omega_B", complex_json(e.omega_B)}, {"tau", complex_json(e.tau)},
                {"tau_reduced", complex_json(reduce_tau(e.tau))}};
  });
  auto* sres = spectral->add_subcommand("residues", "Residues of the tautological form at 0, 1, p0, inf");
  add_base(sres, true);
  bind(sres, "spectral residues", [&] {
    const HitchinBase b = parse_base(p0, masses);
    const Residues r = tautological_residues(b, parse_complex(beta));
    json a = json::array();
    for (int p = 0; p < 4; ++p) a.push_back(json{{"plus", complex_json(r[p][0])}, {"minus", complex_json(r[p][1])}});
    return json{{"residues", a}};
  });
  auto* sflags = spectral->add_subcommand("flags", "Higgs representative and flags at a big-stratum point");
  add_base(sflags, true);
  sflags->add_option("--u", u, "base point of the spectral point (complex)");
  sflags->add_option("--sheet", sheet, "+1 or -1");
  bind(sflags, "spectral flags", [&] {
    const HitchinBase b = parse_base(p0, masses);
    const SpectralFiberPoint pt = big_point(b, parse_complex(beta), parse_complex(u), sheet);
    const RationalMatrix phi = higgs_representative(pt);
    json fl = json::array(), res = json::array();
    for (const Flag& f : flags(pt))
      fl.push_back(f.at_infinity ? json("infinity") : complex_json(f.value));
    for (int p = 0; p < 4; ++p) res.push_back(complex_matrix(phi.residue(p, b.p0)));
    return json{{"w", complex_json(pt.w)}, {"flags", fl}, {"residue_matrices", res}};
  });

  auto* monodromy = app.add_subcommand("monodromy", "SL(2,Z) factorizations and Hurwitz moves");
  monodromy->require_subcommand(1);
  std::string factors;
  int max_depth = 24, fi = 1, fj = 1;
  bool transport = false;
  auto* normalize_cmd = monodromy->add_subcommand("normalize", "Hurwitz moves to (B,A,B,A,B,A) up to conjugation");
  normalize_cmd->add_option("--factors", factors, "[[a,b],[c,d]],... in factor order")->required();
  normalize_cmd->add_option("--max-depth", max_depth, "search depth")->check(CLI::Range(0, 64));
  bind(normalize_cmd, "monodromy normalize", [&] {
    const Normalization n = normalize(parse_factors(factors), max_depth);
    json moves = json::array();
    for (const HurwitzMove& m : n.moves) moves.push_back(json{{"i", m.i}, {"dir", m.direction}});
    return json{{"moves", moves}, {"normal", factors_json(n.normal)}, {"conjugator", int_matrix(n.conjugator)}};
  });
  auto* canonical = monodromy->add_subcommand("canonical", "The canonical factorization");
  bind(canonical, "monodromy canonical", [&] {
    const Factorization f = canonical_factorization();
    return json{{"factors", factors_json(f)}, {"product", int_matrix(f.product())}};
  });
  auto* match = monodromy->add_subcommand("match", "Compare vanishing cycles of factors i and j");
  match->add_option("--factors", factors, "[[a,b],[c,d]],...")->required();
  match->add_option("--i", fi, "1-based index")->required();
  match->add_option("--j", fj, "1-based index")->required();
  match->add_flag("--transport", transport, "move the j-th cycle through the factors in between");
  bind(match, "monodromy match", [&] {
    return json{{"match", vanishing_cycle_match(parse_factors(factors), fi, fj, transport)}};
  });

  auto* hk = app.add_subcommand("hk", "Pointwise hyperkaehler model");
  hk->require_subcommand(1);
  double lambda1 = 1, lambda2 = 1, theta = 0, tol = 1e-10;
  int trials = 1000;
  std::uint64_t seed = 1;
  bool random_params = false;
  auto* check = hk->add_subcommand("check", "Randomized identities of I, J, K, g, omega, Omega");
  check->add_option("--lambda1", lambda1, "positive")->check(CLI::PositiveNumber);
  check->add_option("--lambda2", lambda2, "positive")->check(CLI::PositiveNumber);
  check->add_option("--theta", theta, "radians");
  check->add_option("--trials", trials, "number of random pairs")->check(CLI::NonNegativeNumber);
  check->add_option("--seed", seed, "random seed");
  check->add_option("--tol", tol, "relative tolerance");
  check->add_flag("--random-params", random_params, "draw lambda1, lambda2, theta per trial");
  bind(check, "hk check", [&] {
    const std::optional<HKParams> fixed =
        random_params ? std::nullopt : std::optional<HKParams>(HKParams{lambda1, lambda2, theta});
    const HKCheckReport r = hk_check(fixed, trials, seed, tol);
    json dev = json::object();
    for (const auto& [name, d] : r.max_deviation) dev[name] = d;
    return json{{"pass", r.pass()}, {"trials", r.trials}, {"tolerance", r.tolerance},
                {"max_deviation", dev}, {"min_g_ratio", r.min_g_ratio}};
  });
  std::string hk_alpha = "1/4", hk_m = "0", hk_n = "0", l1 = "1", l2 = "1";
  auto* moment = hk->add_subcommand("moment", "Moment-map residue coefficients at a puncture");
  moment->add_option("--alpha", hk_alpha, "rational weight");
  moment->add_option("--m", hk_m, "Gaussian rational mass");
  moment->add_option("--n", hk_n, "Gaussian rational nilpotent part");
  moment->add_option("--lambda1", l1, "positive rational");
  moment->add_option("--lambda2", l2, "positive rational");
  moment->add_option("--theta", theta, "radians");
  bind(moment, "hk moment", [&] {
    const Rational a = parse_rational(hk_alpha), r1 = parse_rational(l1), r2 = parse_rational(l2);
    const GaussianRational m = parse_gaussian(hk_m), n = parse_gaussian(hk_n);
    if (r1 <= 0 || r2 <= 0) throw Error(ErrorKind::Parse, "lambda1 and lambda2 must be positive");
    const MomentResidues num = moment_residues(a, m, n, {to_double(r1), to_double(r2), theta});
    const ExactMomentResidues ex = moment_residues_exact(a, m, n, r1, r2);
    return json{{"M", complex_matrix(num.M)}, {"mu", complex_matrix(num.mu)},
                {"exact", json{{"M_over_exp_sqrt_lambda2", string_matrix(ex.M_unit)}, {"mu", string_matrix(ex.mu)}}}};
  });

  auto* sweep_cmd = app.add_subcommand("sweep", "CSV sweeps along alpha segments or beta rays");
  std::string grid;
  bool as_json = false, as_csv = false;
  sweep_cmd->add_option("--grid", grid, "JSON grid (inline or @file)")->required();
  auto* jflag = sweep_cmd->add_flag("--json", as_json, "emit JSON rows");
  sweep_cmd->add_flag("--csv", as_csv, "emit CSV (default)")->excludes(jflag);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    CLI::App* failing = &app;
    for (CLI::App* s : app.get_subcommands()) failing = s;
    err << failing->help();
    return 1;
  }

  CLI::App* chosen = app.get_subcommands().front();
  std::string sub_name = chosen->get_name();
  json input = echo_options(chosen);
  while (!chosen->get_subcommands().empty()) {
    chosen = chosen->get_subcommands().front();
    sub_name += " " + chosen->get_name();
    input = echo_options(chosen);
  }

  auto fail = [&](const std::string& kind, const std::string& message, int code) {
    if (code == 1) {
      err << message << "\n";
      return code;
    }
    json j{{"subcommand", sub_name}, {"input", input}, {"error", json{{"kind", kind}, {"message", message}}}};
    out << j.dump(2) << "\n";
    return code;
  };

  try {
    if (sub_name == "sweep") {
      const Table t = sweep(parse_json(read_text(grid)));
      if (as_json) {
        json rows = json::array();
        for (const auto& r : t.rows) {
          json row = json::object();
          for (std::size_t k = 0; k < r.size(); ++k) row[t.header[k]] = r[k];
          rows.push_back(row);
        }
        out << json{{"subcommand", sub_name}, {"input", input}, {"result", rows}}.dump(2) << "\n";
      } else {
        for (std::size_t k = 0; k < t.header.size(); ++k) out << (k ? "," : "") << t.header[k];
        out << "\n";
        for (const auto& r : t.rows) {
          for (std::size_t k = 0; k < r.size(); ++k) out << (k ? "," : "") << csv_escape(r[k]);
          out << "\n";
        }
      }
      return 0;
    }
    const json result = action();
    json diagnostics{{"exact", sub_name.rfind("spectral", 0) != 0 && sub_name != "hk check"}};
    out << json{{"subcommand", sub_name}, {"input", input}, {"result", result}, {"diagnostics", diagnostics}}.dump(2)
        << "\n";
    return 0;
  } catch (const Error& e) {
    return fail(std::string(to_string(e.kind())), e.what(), e.kind() == ErrorKind::Parse ? 1 : 2);
  } catch (const nlohmann::json::exception& e) {
    return fail("Parse", e.what(), 1);
  }
}

}  // namespace d4::cli
