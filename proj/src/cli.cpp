#include "hopfgauge/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hopfgauge/crossmod.hpp"
#include "hopfgauge/errors.hpp"
#include "hopfgauge/json_io.hpp"

namespace hg {

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr std::uint32_t kSeed = 20240521;

const std::map<std::string, std::vector<std::string>>& suites_by_command() {
  static const std::map<std::string, std::vector<std::string>> m = {
      {"verify-hopf", {"axioms"}},
      {"galois-check", {"comodule", "galois", "identities"}},
      {"bialgebroid", {"subspaces", "axioms", "iso"}},
      {"characters", {"characters", "group", "roundtrip"}},
      {"gauge-solve", {"family", "algebra_maps"}},
      {"crossed-module", {"adjoint", "crossed_module"}},
      {"cocycle", {"verify", "normalize", "rescale", "classify"}},
  };
  return m;
}

struct Config {
  std::string command;
  int field = 0;
  int taft = 0;
  int q_index = 1;
  std::string s = "1";
  std::string group_text;
  std::vector<int> group;
  std::string cocycle_file;
  bool self_hopf = false;
  std::string hopf_file;
  std::string object_file;
  std::string suite_text;
  std::vector<std::string> suites;
  bool extended = false;
  unsigned threads = 1;
  std::string out;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

int parse_int(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw InputError(what + ": '" + text + "' is not an integer");
  return v;
}

// Everything the builders need is checked here so later failures are mathematical, not input errors.
void resolve(Config& c, bool field_given) {
  int sources = (c.taft > 0) + (!c.group_text.empty() || !c.cocycle_file.empty()) + !c.hopf_file.empty();
  if (sources == 0) throw InputError("choose a Hopf algebra with --taft, --group/--cocycle or --hopf");
  if (sources > 1) throw InputError("--taft, --group/--cocycle and --hopf are mutually exclusive");
  if (c.taft != 0 && c.taft < 2) throw InputError("--taft: N must be at least 2");
  if (c.taft > 12) throw InputError("--taft: N above 12 is not supported");
  if (c.taft > 0 && (c.q_index <= 0 || c.q_index >= c.taft || std::gcd(c.q_index, c.taft) != 1))
    throw InputError("--q-index: must lie in [1, N) and be coprime to N");
  if (!c.object_file.empty() && c.hopf_file.empty()) throw InputError("--object needs --hopf");
  if (c.self_hopf && !c.object_file.empty()) throw InputError("--self-hopf and --object are mutually exclusive");
  if (!c.group_text.empty()) {
    for (const auto& part : split(c.group_text, ',')) {
      int n = parse_int(part, "--group");
      if (n < 1 || n > 64) throw InputError("--group: factor orders must lie in [1, 64]");
      c.group.push_back(n);
    }
    if (c.group.empty()) throw InputError("--group: no factors given");
  }
  if (!c.suite_text.empty()) {
    const auto& known = suites_by_command().at(c.command);
    std::set<std::string> chosen;
    for (const auto& s : split(c.suite_text, ',')) {
      if (std::find(known.begin(), known.end(), s) == known.end())
        throw InputError("--suite: '" + s + "' is not a suite of " + c.command);
      chosen.insert(s);
    }
    c.suites.assign(chosen.begin(), chosen.end());
  } else {
    c.suites = suites_by_command().at(c.command);
    std::sort(c.suites.begin(), c.suites.end());
  }
  if (c.threads == 0) throw InputError("--threads: must be at least 1");

  if (!field_given) {
    if (const char* env = std::getenv("HG_FIELD_M"); env && *env) c.field = parse_int(env, "HG_FIELD_M");
  }
  std::vector<int> factors = c.group;
  if (factors.empty() && !c.cocycle_file.empty()) {
    // the default conductor follows the group named in the file
    json j = read_json_file(c.cocycle_file);
    if (j.is_object() && j.contains("group") && j["group"].is_array())
      for (const auto& n : j["group"])
        if (n.is_number_integer() && n.get<int>() >= 1 && n.get<int>() <= 64) factors.push_back(n.get<int>());
  }
  if (c.field == 0) {
    if (c.taft > 0) {
      c.field = c.taft;
    } else if (!factors.empty()) {
      int e = 1;
      for (int n : factors) e = std::lcm(e, n);
      // square roots of cocycle values live one level up
      c.field = c.command == "cocycle" ? 2 * e : e;
    } else {
      c.field = 1;
    }
  }
  if (c.field < 1 || c.field > 2000) throw InputError("--field: conductor must lie in [1, 2000]");
  if (c.taft > 0 && !CyclotomicField::get(c.field).has_root_of_order(c.taft))
    throw InputError("--field: Q(zeta_" + std::to_string(c.field) + ") has no primitive " + std::to_string(c.taft) +
                     "-th root of unity; use a multiple of " + std::to_string(c.taft));
}

// ---- rendering ----

json labels_in(const std::vector<std::string>& labels, const std::vector<std::size_t>& order) {
  json out = json::array();
  for (auto i : order) out.push_back(labels[i]);
  return out;
}

// "matrix" has column c = image of basis c; "paper_layout" has row r = image of order[r].
json render(const Matrix& m, const std::vector<std::string>& labels, const CyclotomicField* f,
            const std::optional<std::vector<std::size_t>>& order) {
  json out = {{"basis", labels}, {"matrix", matrix_to_json(m, f)}};
  if (order) out["paper_layout"] = {{"basis", labels_in(labels, *order)}, {"rows", matrix_to_json(to_display(m, *order), f)}};
  return out;
}

std::string param_name(std::size_t k) { return "p" + std::to_string(k); }

std::string expression(const std::pair<Scalar, std::vector<Scalar>>& e) {
  std::vector<std::string> terms;
  if (!e.first.is_zero()) terms.push_back(e.first.to_string());
  for (std::size_t k = 0; k < e.second.size(); ++k) {
    const Scalar& c = e.second[k];
    if (c.is_zero()) continue;
    if (c.is_one())
      terms.push_back(param_name(k));
    else if (c == Scalar(-1))
      terms.push_back("-" + param_name(k));
    else
      terms.push_back("(" + c.to_string() + ")*" + param_name(k));
  }
  if (terms.empty()) return "0";
  std::string out = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) out += " + " + terms[i];
  return out;
}

json render_family(const AffineFamily& fam, const std::vector<std::string>& labels,
                   const std::optional<std::vector<std::size_t>>& order) {
  std::size_t n = fam.particular.rows();
  json m = json::array();
  for (std::size_t r = 0; r < n; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < n; ++c) row.push_back(expression(fam.entry(r, c)));
    m.push_back(row);
  }
  json out = {{"basis", labels}, {"matrix", m}};
  if (order) {
    json rows = json::array();
    for (std::size_t r = 0; r < n; ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < n; ++c) row.push_back(expression(fam.entry((*order)[c], (*order)[r])));
      rows.push_back(row);
    }
    out["paper_layout"] = {{"basis", labels_in(labels, *order)}, {"rows", rows}};
  }
  return out;
}

json sparse_terms(const SparseVec& v, const std::vector<std::string>& labels, const CyclotomicField* f) {
  std::size_t n = labels.size();
  json out = json::array();
  for (const auto& [idx, s] : v) out.push_back({labels[idx / n], labels[idx % n], scalar_to_json(s, f)});
  return out;
}

std::string join(const std::vector<std::string>& v, std::size_t limit = 5) {
  std::string out;
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) out += (i ? "; " : "") + v[i];
  if (v.size() > limit) out += "; ... (" + std::to_string(v.size()) + " total)";
  return out;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero())
      for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

// x^i g^j -> r^i x^i g^j on T_N
Matrix scale_x(int n, const Scalar& r) {
  std::size_t d = static_cast<std::size_t>(n) * n;
  Matrix m(d, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i * n + j, i * n + j) = r.pow(i);
  return m;
}

// ---- session ----

class Session {
 public:
  explicit Session(const Config& c) : cfg_(c), f_(&CyclotomicField::get(c.field)), rng_(kSeed) {}

  const Config& cfg() const { return cfg_; }
  const CyclotomicField* field() const { return f_; }
  Report& report() { return rep_; }
  json& results() { return results_; }

  // Input-level construction; errors here are exit code 2.
  void build_inputs(bool need_object) {
    if (!cfg_.cocycle_file.empty()) {
      cocycle_ = cocycle_from_json(read_json_file(cfg_.cocycle_file), f_);
      if (!cfg_.group.empty() && cocycle_->group.factors() != cfg_.group)
        throw InputError(cfg_.cocycle_file + ": $.group does not match --group");
    } else if (!cfg_.group.empty()) {
      cocycle_ = constant_cocycle(FiniteAbelianGroup(cfg_.group), Scalar(1));
    }
    if (cfg_.taft > 0) {
      hopf_ = build_taft(*f_, cfg_.taft, cfg_.q_index);
    } else if (cocycle_) {
      hopf_ = build_group_algebra(cocycle_->group.factors());
    } else {
      hopf_ = hopf_from_json(read_json_file(cfg_.hopf_file), f_);
    }
    hopf_->field = f_;
    if (cfg_.taft > 0) {
      try {
        s_ = Scalar::parse(cfg_.s, f_);
      } catch (const std::invalid_argument& e) {
        throw InputError(std::string("--s: ") + e.what());
      }
    }
    if (need_object && !cfg_.object_file.empty()) object_json_ = read_json_file(cfg_.object_file);
  }

  const FinDimHopf& hopf() const { return *hopf_; }
  bool has_cocycle() const { return cocycle_.has_value(); }
  const Cocycle& cocycle() const { return *cocycle_; }

  bool taft_object() const { return cfg_.taft > 0 && !cfg_.self_hopf; }

  std::string object_kind() const {
    if (cfg_.self_hopf) return "self";
    if (cfg_.taft > 0) return "taft";
    if (cocycle_) return "graded";
    return "file";
  }

  const ComoduleAlgebra& object() {
    if (!object_) {
      ComoduleAlgebra c;
      if (cfg_.self_hopf)
        c = build_self_galois(*hopf_);
      else if (cfg_.taft > 0)
        c = build_taft_galois(*f_, cfg_.taft, cfg_.q_index, s_);
      else if (cocycle_)
        c = build_graded_galois(*cocycle_);
      else
        c = comodule_from_json(object_json_, *hopf_, f_);
      c.hopf.field = f_;
      object_ = std::move(c);
    }
    return *object_;
  }

  const GaloisExtension& ext() {
    if (!ext_) ext_ = build_galois(object());
    return *ext_;
  }

  const Bialgebroid& bialgebroid() {
    if (!b_) b_ = build_bialgebroid(ext());
    return *b_;
  }

  // Matrices moving maps between C(A_s, T_N) and T_N, when that is the object.
  const std::optional<std::pair<Matrix, Matrix>>& taft_iso() {
    if (!taft_iso_done_) {
      taft_iso_done_ = true;
      if (taft_object()) {
        auto t = iso_taft(bialgebroid());
        if (!t.iso.ok()) throw CheckFailure("C(A_s, T_N) -> T_N failed to verify");
        taft_iso_ = std::make_pair(t.iso.forward.matrix, t.iso.backward.matrix);
      }
    }
    return taft_iso_;
  }

  std::optional<std::vector<std::size_t>> order() const {
    return cfg_.taft > 0 ? display_order(cfg_.taft) : std::nullopt;
  }

  std::vector<std::string> c_labels() {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < bialgebroid().dim(); ++i) out.push_back("c" + std::to_string(i));
    return out;
  }

  // Small nonzero rationals from a fixed seed; raw engine output keeps them platform independent.
  Scalar sample() {
    long num = static_cast<long>(rng_() % 7) - 3;
    if (num == 0) num = 4;
    long den = static_cast<long>(rng_() % 3) + 1;
    return Scalar(Rational(num, den));
  }

  bool selected(const std::string& suite) const {
    return std::find(cfg_.suites.begin(), cfg_.suites.end(), suite) != cfg_.suites.end();
  }

  template <class Fn>
  void suite(const std::string& name, Fn fn) {
    if (!selected(name)) return;
    try {
      fn();
    } catch (const Error& e) {
      rep_.add(name + ".error", false, e.what());
    }
  }

 private:
  Config cfg_;
  const CyclotomicField* f_;
  std::mt19937 rng_;
  Report rep_;
  json results_ = json::object();
  std::optional<Cocycle> cocycle_;
  std::optional<FinDimHopf> hopf_;
  Scalar s_;
  json object_json_;
  std::optional<ComoduleAlgebra> object_;
  std::optional<GaloisExtension> ext_;
  std::optional<Bialgebroid> b_;
  bool taft_iso_done_ = false;
  std::optional<std::pair<Matrix, Matrix>> taft_iso_;
};

// ---- commands ----

void cmd_verify_hopf(Session& S) {
  const auto& H = S.hopf();
  auto* f = S.field();
  S.suite("axioms", [&] { S.report().merge(verify_hopf(H), "axioms"); });
  json& r = S.results();
  r["dim"] = H.dim();
  r["basis"] = H.labels();
  r["cocommutative"] = is_cocommutative(H);
  r["antipode_invertible"] = H.antipode_inverse.has_value();
  r["hopf"] = hopf_to_json(H, f);
  if (H.family == HopfFamily::taft)
    r["family"] = {{"name", "taft"}, {"n", H.taft_n}, {"q_index", H.taft_q_index}};
  else if (H.family == HopfFamily::group)
    r["family"] = {{"name", "group"}, {"factors", H.group.factors()}};
  else
    r["family"] = {{"name", "generic"}};
}

void cmd_galois_check(Session& S) {
  auto* f = S.field();
  json& r = S.results();
  S.suite("comodule", [&] {
    const auto& c = S.object();
    S.report().merge(check_comodule_axioms(c.coaction, c.hopf, &c.algebra), "comodule");
    r["object_dim"] = c.dim();
    r["coinvariants_dim"] = c.base_dim();
    r["b_in_centre"] = c.b_in_centre;
  });
  S.suite("galois", [&] {
    const auto& g = S.ext();
    S.report().add("galois.chi_well_defined", g.chi_well_defined, "chi does not vanish on the balancing relations");
    S.report().add("galois.is_galois", g.is_galois, "chi has rank deficit " + std::to_string(g.rank_deficit));
    r["is_galois"] = g.is_galois;
    r["balanced_dim"] = g.balanced.dim();
    if (g.is_galois) {
      r["tau"] = render(g.tau, S.hopf().labels(), f, std::nullopt);
      json terms = json::object();
      for (std::size_t h = 0; h < g.hopf_dim(); ++h)
        terms[S.hopf().labels()[h]] = sparse_terms(g.tau_terms[h], g.base.algebra.labels(), f);
      r["tau_terms"] = terms;
    }
  });
  S.suite("identities", [&] {
    Report ids = verify_translation_identities(S.ext());
    json checks = json::object();
    for (const auto& rec : ids.records()) checks[rec.name] = status_name(rec.status);
    r["identity_checks"] = checks;
    S.report().merge(ids, "identities");
  });
}

void cmd_bialgebroid(Session& S) {
  auto* f = S.field();
  json& r = S.results();
  S.suite("subspaces", [&] {
    const auto& b = S.bialgebroid();
    S.report().add("subspaces.diagonal_equals_tau_form", b.C == b.C_tau, "the two subspaces differ");
    if (b.C_equalizer)
      S.report().add("subspaces.diagonal_equals_equalizer", b.C == *b.C_equalizer, "the two subspaces differ");
    else
      S.report().skip("subspaces.diagonal_equals_equalizer", "S is not invertible");
    r["dim"] = b.dim();
  });
  S.suite("axioms", [&] {
    const auto& b = S.bialgebroid();
    S.report().merge(verify_bialgebroid(b), "axioms");
    const auto& labels = b.ext.base.algebra.labels();
    auto cl = S.c_labels();
    json basis = json::object();
    for (std::size_t i = 0; i < b.dim(); ++i) basis[cl[i]] = sparse_terms(b.basis_terms[i], labels, f);
    json prod = json::array();
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) {
        const Vec& p = b.product[i * b.dim() + j];
        for (std::size_t k = 0; k < b.dim(); ++k)
          if (!p[k].is_zero()) prod.push_back({i, j, k, scalar_to_json(p[k], f)});
      }
    r["dim"] = b.dim();
    r["base_dim"] = b.base_dim();
    r["basis"] = basis;
    r["product"] = prod;
    r["unit"] = vec_to_json(b.unit, f);
    r["source"] = matrix_to_json(b.source, f);
    r["target"] = matrix_to_json(b.target, f);
    r["counit"] = matrix_to_json(b.counit, f);
    r["coproduct"] = {{"balanced_dim", b.CC.dim()}, {"matrix", matrix_to_json(b.coproduct, f)}};
    if (b.antipode) r["antipode"] = render(*b.antipode, cl, f, std::nullopt);
  });
  S.suite("iso", [&] {
    const auto& b = S.bialgebroid();
    const auto& H = S.hopf();
    auto emit = [&](const HopfIso& iso, const char* kind) {
      S.report().merge(iso.report, "iso");
      S.report().add("iso.algebra_map", iso.algebra_map);
      S.report().add("iso.coalgebra_map", iso.coalgebra_map);
      S.report().add("iso.mutually_inverse", iso.mutually_inverse);
      r["iso"] = {{"kind", kind},
                  {"forward", render(iso.forward.matrix, S.c_labels(), f, std::nullopt)},
                  {"backward", render(iso.backward.matrix, H.labels(), f, std::nullopt)}};
    };
    if (S.taft_object()) {
      auto t = iso_taft(b);
      emit(t.iso, "taft");
      Scalar q = Scalar::root_of_unity(*f, S.cfg().taft, S.cfg().q_index);
      bool ok = t.commutation && *t.commutation == q;
      S.report().add("iso.xi_gamma_commutation", ok,
                     t.commutation ? "Xi.Gamma = " + t.commutation->to_string() + " Gamma.Xi" : "not proportional");
      r["iso"]["xi"] = vec_to_json(t.xi, f);
      r["iso"]["gamma"] = vec_to_json(t.gamma, f);
      if (t.commutation) r["iso"]["commutation"] = scalar_to_json(*t.commutation, f);
    } else if (S.cfg().self_hopf) {
      emit(iso_self(b), "self");
    } else if (is_cocommutative(H) && b.over_ground()) {
      emit(iso_cocommutative(b), "cocommutative");
    } else {
      S.report().skip("iso", "no reference isomorphism for this object");
    }
  });
}

std::optional<std::size_t> expected_character_count(const FinDimHopf& H) {
  if (H.family == HopfFamily::taft) return static_cast<std::size_t>(H.taft_n);
  if (H.family == HopfFamily::group) return H.group.order();
  return std::nullopt;
}

bool cyclic_family(const FinDimHopf& H) {
  if (H.family == HopfFamily::taft) return true;
  if (H.family != HopfFamily::group) return false;
  // a product of cyclic groups of pairwise coprime orders is cyclic
  int prod = 1, l = 1;
  for (int n : H.group.factors()) {
    prod *= n;
    l = std::lcm(l, n);
  }
  return prod == l;
}

void cmd_characters(Session& S) {
  auto* f = S.field();
  json& r = S.results();
  const auto& H = S.hopf();
  std::optional<std::vector<Bisection>> cache;
  auto chars = [&]() -> const std::vector<Bisection>& {
    if (!cache) cache = enumerate_characters(S.bialgebroid());
    return *cache;
  };
  S.suite("characters", [&] {
    auto on_h = enumerate_characters(H);
    const auto& cs = chars();
    if (auto n = expected_character_count(H))
      S.report().add("characters.count", cs.size() == *n,
                     "found " + std::to_string(cs.size()) + ", expected " + std::to_string(*n));
    std::vector<std::string> bad;
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (!cs[i].valid() || cs[i].extended) bad.push_back("character " + std::to_string(i));
    S.report().add("characters.strict_bisections", bad.empty(), join(bad));
    json list = json::array();
    for (std::size_t i = 0; i < cs.size(); ++i) {
      json e = {{"on_bialgebroid", vec_to_json(cs[i].sigma.row(0), f)}};
      if (i < on_h.size()) {
        json v = json::object();
        for (std::size_t k = 0; k < H.dim(); ++k) v[H.labels()[k]] = scalar_to_json(on_h[i](0, k), f);
        e["on_hopf"] = v;
      }
      list.push_back(e);
    }
    r["count"] = cs.size();
    r["characters"] = list;
  });
  S.suite("group", [&] {
    const auto& b = S.bialgebroid();
    std::vector<Matrix> elems;
    for (const auto& c : chars()) elems.push_back(c.sigma);
    auto table = group_table(elems, [&](const Matrix& x, const Matrix& y) { return bisection_product(x, y, b); });
    bool closed = true;
    for (const auto& row : table)
      for (int v : row) closed = closed && v >= 0;
    S.report().add("group.closed", closed, "a product left the list of characters");
    auto unit = std::find(elems.begin(), elems.end(), unit_bisection(b));
    S.report().add("group.contains_unit", unit != elems.end(), "the counit is not among the characters");
    bool cyclic = is_cyclic_table(table);
    if (cyclic_family(H))
      S.report().add("group.cyclic", cyclic, "the table is not that of a cyclic group");
    else
      S.report().skip("group.cyclic", "the character group of this Hopf algebra need not be cyclic");
    r["table"] = table;
    r["cyclic"] = cyclic;
  });
  S.suite("roundtrip", [&] {
    const auto& b = S.bialgebroid();
    const auto& ext = S.ext();
    std::vector<std::string> w_alpha, w_beta, w_inv, w_binv;
    std::size_t n = ext.dim();
    for (std::size_t i = 0; i < chars().size(); ++i) {
      const Matrix& sigma = chars()[i].sigma;
      std::string tag = "character " + std::to_string(i);
      Matrix F = beta(sigma, b);
      auto g = verify_gauge(F, ext, false);
      if (!g.valid()) w_beta.push_back(tag + ": F_sigma is not a gauge transformation");
      if (alpha(F, b) != sigma) w_alpha.push_back(tag + ": sigma_{F_sigma} != sigma");
      if (beta(alpha(F, b), b) != F) w_beta.push_back(tag + ": F_{sigma_F} != F");
      auto inv = gauge_inverse(g, b);
      if (F * inv.F.matrix != Matrix::identity(n) || inv.F.matrix * F != Matrix::identity(n))
        w_inv.push_back(tag);
      auto pinv = product_inverse(sigma, b);
      if (!pinv || *pinv != bisection_inverse(sigma, b)) w_binv.push_back(tag);
    }
    S.report().add("roundtrip.alpha_beta", w_alpha.empty(), join(w_alpha));
    S.report().add("roundtrip.beta_alpha", w_beta.empty(), join(w_beta));
    S.report().add("roundtrip.gauge_inverse", w_inv.empty(), join(w_inv));
    S.report().add("roundtrip.bisection_inverse", w_binv.empty(), join(w_binv));
  });
}

void cmd_gauge_solve(Session& S) {
  auto* f = S.field();
  json& r = S.results();
  std::optional<AffineFamily> fam_cache;
  auto fam = [&]() -> const AffineFamily& {
    if (!fam_cache) fam_cache = solve_extended_gauge(S.ext());
    return *fam_cache;
  };
  const auto& labels = S.object().algebra.labels();
  auto order = S.taft_object() ? S.order() : std::nullopt;
  S.suite("family", [&] {
    if (!S.cfg().extended) {
      S.report().skip("family", "pass --extended to solve for the extended gauge group");
      return;
    }
    const auto& ext = S.ext();
    const auto& F = fam();
    std::size_t n = ext.dim();
    S.report().add("family.contains_identity", F.contains(Matrix::identity(n)));
    // members with all parameters nonzero must be extended gauge maps
    std::vector<std::string> w;
    for (int t = 0; t < 3; ++t) {
      std::vector<Scalar> p;
      for (std::size_t k = 0; k < F.free_parameters(); ++k) p.push_back(S.sample());
      auto g = verify_gauge(F.at(p), ext, true);
      if (!g.valid()) w.push_back("sample " + std::to_string(t) + ": " + join(g.report.failures(), 2));
    }
    S.report().add("family.sampled_members_valid", w.empty(), join(w));
    if (S.taft_object() && (S.cfg().taft == 2 || S.cfg().taft == 3)) {
      std::size_t want = S.cfg().taft == 2 ? 3 : 8;
      S.report().add("family.parameter_count", F.free_parameters() == want,
                     std::to_string(F.free_parameters()) + " parameters, expected " + std::to_string(want));
    }
    json params = json::array(), nonzero = json::array(), anchors = json::object();
    for (std::size_t k = 0; k < F.free_parameters(); ++k) {
      params.push_back(param_name(k));
      anchors[param_name(k)] = {labels[F.anchors[k].first], labels[F.anchors[k].second]};
    }
    for (auto k : F.must_be_nonzero) nonzero.push_back(param_name(k));
    r["family"] = {{"free_parameters", F.free_parameters()},
                   {"parameters", params},
                   {"must_be_nonzero", nonzero},
                   {"anchors", anchors},
                   {"map", render_family(F, labels, order)}};
  });
  S.suite("algebra_maps", [&] {
    const auto& ext = S.ext();
    std::vector<Matrix> maps;
    try {
      maps = algebra_maps_in_family(fam(), ext);
    } catch (const UnsupportedFamily& e) {
      S.report().skip("algebra_maps", e.what());
      return;
    }
    std::vector<std::string> w;
    for (std::size_t i = 0; i < maps.size(); ++i)
      if (!verify_gauge(maps[i], ext, false).valid()) w.push_back("map " + std::to_string(i));
    S.report().add("algebra_maps.strict_gauge", w.empty(), join(w));
    auto table = group_table(maps, gauge_product);
    bool closed = true;
    for (const auto& row : table)
      for (int v : row) closed = closed && v >= 0;
    S.report().add("algebra_maps.closed", closed, "a composite left the list");
    bool cyclic = is_cyclic_table(table);
    if (S.taft_object()) {
      S.report().add("algebra_maps.count", maps.size() == static_cast<std::size_t>(S.cfg().taft),
                     std::to_string(maps.size()) + " maps, expected " + std::to_string(S.cfg().taft));
      S.report().add("algebra_maps.cyclic", cyclic, "the table is not that of a cyclic group");
    }
    json list = json::array();
    for (const auto& m : maps) list.push_back(render(m, labels, f, order));
    r["algebra_maps"] = {{"count", maps.size()}, {"maps", list}, {"table", table}, {"cyclic", cyclic}};
  });
}

// unital functionals near the counit, kept when they verify as extended bisections
std::vector<Bisection> sample_extended(Session& S, std::size_t want) {
  const auto& b = S.bialgebroid();
  std::vector<Bisection> out;
  Vec eps = b.counit.row(0);
  for (int attempt = 0; attempt < 50 && out.size() < want; ++attempt) {
    Vec r(b.dim());
    for (auto& x : r) x = S.sample();
    Scalar at_unit;
    for (std::size_t i = 0; i < b.dim(); ++i) at_unit += r[i] * b.unit[i];
    Matrix sigma(1, b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i) sigma(0, i) = eps[i] + r[i] - at_unit * eps[i];
    auto s = verify_bisection(sigma, b, true);
    if (s.valid() && s.extended) out.push_back(std::move(s));
  }
  return out;
}

void cmd_crossed_module(Session& S) {
  auto* f = S.field();
  json& r = S.results();
  const auto& H = S.hopf();
  std::vector<Bisection> chars;
  std::vector<BialgebroidAut> ads;
  auto ensure_adjoints = [&] {
    if (!ads.empty()) return;
    const auto& b = S.bialgebroid();
    chars = enumerate_characters(b);
    for (const auto& c : chars) ads.push_back(adjoint(c, b));
  };
  auto order = S.order();
  S.suite("adjoint", [&] {
    ensure_adjoints();
    const auto& b = S.bialgebroid();
    std::vector<std::string> w_valid, w_forms, w_coinn, w_scale;
    json list = json::array();
    auto iso = S.taft_iso();
    for (std::size_t i = 0; i < chars.size(); ++i) {
      std::string tag = "character " + std::to_string(i);
      if (!ads[i].valid()) w_valid.push_back(tag);
      if (!ads[i].report.passed("forms_agree")) w_forms.push_back(tag);
      if (coinn(chars[i], b).Phi.matrix != ads[i].Phi.matrix) w_coinn.push_back(tag);
      json e = {{"on_bialgebroid", render(ads[i].Phi.matrix, S.c_labels(), f, std::nullopt)}};
      if (iso) {
        Matrix on_h = iso->first * ads[i].Phi.matrix * iso->second;
        Scalar r_val = (chars[i].sigma * iso->second)(0, 1);  // value on g
        if (on_h != scale_x(S.cfg().taft, r_val.inverse())) w_scale.push_back(tag);
        e["on_hopf"] = render(on_h, H.labels(), f, order);
        e["character_on_g"] = scalar_to_json(r_val, f);
      }
      list.push_back(e);
    }
    S.report().add("adjoint.valid_automorphisms", w_valid.empty(), join(w_valid));
    S.report().add("adjoint.forms_agree", w_forms.empty(), join(w_forms));
    S.report().add("adjoint.coinn_agrees", w_coinn.empty(), join(w_coinn));
    if (iso) S.report().add("adjoint.character_scaling", w_scale.empty(), "Ad_phi does not fix g and scale x by phi(g)^-1 for " + join(w_scale));
    r["adjoint"] = list;
  });
  S.suite("crossed_module", [&] {
    ensure_adjoints();
    const auto& b = S.bialgebroid();
    std::vector<Bisection> bis = chars;
    std::vector<BialgebroidAut> auts = ads;
    Matrix id_b = Matrix::identity(b.base_dim());
    auts.push_back(verify_aut(Matrix::identity(b.dim()), id_b, b, false));
    auto iso = S.taft_iso();
    if (iso) {
      auto a = verify_aut(iso->second * scale_x(S.cfg().taft, Scalar(2)) * iso->first, id_b, b, false);
      if (!a.valid()) throw CheckFailure("x -> 2x did not give a bialgebroid automorphism");
      auts.push_back(std::move(a));
    }
    json sampled = json::object();
    if (S.cfg().extended) {
      auto ext = sample_extended(S, 5);
      json rows = json::array();
      for (auto& s : ext) {
        rows.push_back(vec_to_json(s.sigma.row(0), f));
        auts.push_back(adjoint(s, b));
        bis.push_back(std::move(s));
      }
      sampled["bisections"] = rows;
      if (iso && S.cfg().taft == 2) {
        // unital coalgebra automorphisms of T_2: x -> c(g - 1) + a2 x, xg -> b(1 - g) + a1 xg
        json params = json::array();
        for (int t = 0; t < 5; ++t) {
          Scalar a1 = S.sample(), a2 = S.sample(), bb = S.sample(), c = S.sample();
          Matrix m = Matrix::identity(4);
          m(1, 2) = c;
          m(0, 2) = -c;
          m(2, 2) = a2;
          m(0, 3) = bb;
          m(1, 3) = -bb;
          m(3, 3) = a1;
          auto a = verify_aut(iso->second * m * iso->first, id_b, b, true);
          if (!a.valid()) throw CheckFailure("a sampled T_2 automorphism failed to verify");
          auts.push_back(std::move(a));
          params.push_back({{"a1", scalar_to_json(a1, f)},
                            {"a2", scalar_to_json(a2, f)},
                            {"b", scalar_to_json(bb, f)},
                            {"c", scalar_to_json(c, f)}});
        }
        sampled["t2_automorphisms"] = params;
      }
    }
    auto cm = verify_crossed_module(bis, auts, b, S.cfg().threads);
    S.report().add("crossed_module.mu_is_morphism", cm.mu_is_morphism, join(cm.mu_witnesses));
    S.report().add("crossed_module.axiom1", cm.axiom1, join(cm.axiom1_witnesses));
    S.report().add("crossed_module.axiom2", cm.axiom2, join(cm.axiom2_witnesses));
    r["crossed_module"] = {{"bisections", bis.size()},
                           {"automorphisms", auts.size()},
                           {"action_trivial", cm.action_trivial},
                           {"nontrivial_action_pairs", cm.nontrivial_action.size()},
                           {"nontrivial_action_examples", join(cm.nontrivial_action, 3)},
                           {"sampled", sampled}};
  });
}

void cmd_cocycle(Session& S) {
  auto* f = S.field();
  json& r = S.results();
  if (!S.has_cocycle()) throw InputError("cocycle needs --group or --cocycle");
  const Cocycle& lam = S.cocycle();
  const auto& G = lam.group;
  r["input"] = cocycle_to_json(lam, f);
  std::optional<Cocycle> normalized;
  auto norm = [&]() -> const Cocycle& {
    if (!normalized) normalized = normalize(lam);
    return *normalized;
  };
  S.suite("verify", [&] { S.report().merge(verify_cocycle(lam), "verify"); });
  S.suite("normalize", [&] {
    const auto& n = norm();
    S.report().add("normalize.unit_value", n(0, 0).is_one(), "lambda(e, e) = " + n(0, 0).to_string());
    S.report().add("normalize.still_cocycle", verify_cocycle(n).ok());
    r["normalized"] = cocycle_to_json(n, f);
  });
  S.suite("rescale", [&] {
    if (!verify_cocycle(lam).ok()) throw CocycleInvalid("input is not a cocycle");
    LambdaRescale lr;
    try {
      lr = lambda_rescale(norm(), f);
    } catch (const RootUnavailable& e) {
      S.report().add("rescale.roots", false,
                     std::string(e.what()) + "; rerun with --field " + std::to_string(2 * S.cfg().field));
      return;
    }
    S.report().add("rescale.lambda_coboundary", lr.lambda_is_coboundary, "Lambda is not d(mu)");
    auto obj = build_graded_galois(lr.rescaled);
    auto b = build_bialgebroid(build_galois(obj));
    const auto& A = obj.algebra;
    auto v = [&](std::size_t g) { return b.coordinates(kron(A.basis_vector(g), A.basis_vector(G.inverse(g)))); };
    std::vector<std::string> w;
    for (std::size_t g = 0; g < G.order(); ++g)
      for (std::size_t h = 0; h < G.order(); ++h)
        if (b.multiply(v(g), v(h)) != v(G.multiply(g, h))) w.push_back("(" + G.label(g) + ", " + G.label(h) + ")");
    S.report().add("rescale.product", w.empty(), join(w));
    S.report().add("rescale.iso_cocommutative", iso_cocommutative(b).ok());
    r["rescale"] = {{"big_lambda", vec_to_json(lr.big_lambda, f)},
                    {"mu", vec_to_json(lr.mu, f)},
                    {"nu", vec_to_json(lr.nu, f)},
                    {"rescaled", cocycle_to_json(lr.rescaled, f)}};
  });
  S.suite("classify", [&] {
    if (!verify_cocycle(lam).ok()) throw CocycleInvalid("input is not a cocycle");
    const auto& n = norm();
    auto cl = classify(n, f);
    if (cl.trivial) {
      bool ok = coboundary(G, cl.mu).values == n.values;
      S.report().add("classify.mu_reproduces", ok, "d(mu) differs from lambda");
      r["classification"] = {{"trivial", true}, {"mu", vec_to_json(cl.mu, f)}};
    } else {
      bool ok = !cl.witness_beta.is_one();
      S.report().add("classify.witness", ok, "witness has beta = 1");
      r["classification"] = {{"trivial", false},
                             {"witness", {G.label(cl.witness_g), G.label(cl.witness_h)}},
                             {"beta", scalar_to_json(cl.witness_beta, f)}};
    }
  });
}

json config_echo(const Config& c) {
  json builder = json::object();
  if (c.taft > 0) builder = {{"taft", c.taft}, {"q_index", c.q_index}, {"s", c.s}};
  if (!c.group.empty()) builder["group"] = c.group;
  if (!c.cocycle_file.empty()) builder["cocycle"] = c.cocycle_file;
  if (!c.hopf_file.empty()) builder["hopf"] = c.hopf_file;
  if (!c.object_file.empty()) builder["object"] = c.object_file;
  builder["self_hopf"] = c.self_hopf;
  return {{"field", c.field}, {"builder", builder}, {"suites", c.suites}, {"extended", c.extended}};
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  CliResult res;
  Config cfg;
  CLI::App app{"Exact checks for Hopf-Galois extensions, their bialgebroids and gauge groups", "hopfgauge"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", kVersion);
  std::map<std::string, bool> field_given;
  for (const auto& [name, suites] : suites_by_command()) {
    std::string list;
    for (const auto& s : suites) list += (list.empty() ? "" : ",") + s;
    auto* sub = app.add_subcommand(name, "suites: " + list);
    sub->add_option("--taft", cfg.taft, "Taft algebra T_N (object A_s)");
    sub->add_option("--q-index", cfg.q_index, "q = zeta_N^k");
    sub->add_option("--s", cfg.s, "the scalar s of A_s");
    sub->add_option("--group", cfg.group_text, "abelian group n1,n2,...");
    sub->add_option("--cocycle", cfg.cocycle_file, "cocycle JSON file");
    sub->add_flag("--self-hopf", cfg.self_hopf, "use H coacting on itself");
    sub->add_option("--hopf", cfg.hopf_file, "Hopf algebra JSON file");
    sub->add_option("--object", cfg.object_file, "comodule algebra JSON file over --hopf");
    sub->add_option("--field", cfg.field, "conductor M of Q(zeta_M)");
    sub->add_option("--out", cfg.out, "write the report here instead of stdout");
    sub->add_option("--suite", cfg.suite_text, "comma separated suites to run");
    sub->add_flag("--extended", cfg.extended, "extended gauge maps and bisections");
    sub->add_option("--threads", cfg.threads, "worker threads for pairwise checks");
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::Success&) {
    res.out = app.get_subcommands().empty() ? app.help() : app.get_subcommands()[0]->help();
    if (std::find(args.begin(), args.end(), "--version") != args.end()) res.out = std::string(kVersion) + "\n";
    return res;
  } catch (const CLI::ParseError& e) {
    res.exit_code = 2;
    res.err = std::string("error: ") + e.what() + "\n";
    return res;
  }
  auto* sub = app.get_subcommands()[0];
  cfg.command = sub->get_name();

  std::optional<Session> session;
  try {
    resolve(cfg, sub->count("--field") > 0);
    session.emplace(cfg);
    session->build_inputs(cfg.command != "verify-hopf" && cfg.command != "cocycle");
  } catch (const InputError& e) {
    res.exit_code = 2;
    res.err = std::string("input error: ") + e.what() + "\n";
    return res;
  } catch (const std::invalid_argument& e) {
    res.exit_code = 2;
    res.err = std::string("input error: ") + e.what() + "\n";
    return res;
  } catch (const Error& e) {
    res.exit_code = 2;
    res.err = std::string("input error: ") + e.what() + "\n";
    return res;
  }
  Session& S = *session;
  try {
    if (cfg.command == "verify-hopf") cmd_verify_hopf(S);
    else if (cfg.command == "galois-check") cmd_galois_check(S);
    else if (cfg.command == "bialgebroid") cmd_bialgebroid(S);
    else if (cfg.command == "characters") cmd_characters(S);
    else if (cfg.command == "gauge-solve") cmd_gauge_solve(S);
    else if (cfg.command == "crossed-module") cmd_crossed_module(S);
    else if (cfg.command == "cocycle") cmd_cocycle(S);
  } catch (const InputError& e) {
    res.exit_code = 2;
    res.err = std::string("input error: ") + e.what() + "\n";
    return res;
  } catch (const Error& e) {
    // failures outside any suite, e.g. building the object
    S.report().add("build", false, e.what());
  }

  const Report& rep = S.report();
  std::size_t pass = 0, fail = 0, skipped = 0;
  for (const auto& rec : rep.records()) {
    if (rec.status == Status::pass) ++pass;
    else if (rec.status == Status::fail) ++fail;
    else ++skipped;
  }
  json doc = {{"tool", {{"name", "hopfgauge"}, {"version", kVersion}}},
              {"command", cfg.command},
              {"config", config_echo(cfg)},
              {"checks", rep.to_json()},
              {"results", S.results()},
              {"summary", {{"pass", pass}, {"fail", fail}, {"skipped", skipped}, {"ok", fail == 0}}}};
  std::string text = doc.dump(2) + "\n";
  res.exit_code = fail == 0 ? 0 : 1;
  if (cfg.out.empty()) {
    res.out = text;
  } else {
    std::ofstream o(cfg.out, std::ios::binary);
    if (!o || !(o << text)) {
      res.exit_code = 2;
      res.err = "input error: cannot write " + cfg.out + "\n";
      return res;
    }
  }
  res.err += cfg.command + ": " + std::to_string(pass) + " pass, " + std::to_string(fail) + " fail, " +
             std::to_string(skipped) + " skipped\n";
  return res;
}

}  // namespace hg
