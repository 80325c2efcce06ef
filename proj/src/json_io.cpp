#include "hopfgauge/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "hopfgauge/errors.hpp"

namespace hg {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) { throw InputError(path + ": " + what); }

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string key(const std::string& path, const char* k) { return path + "." + k; }

const json& require(const json& j, const char* k, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(k);
  if (it == j.end()) bad(key(path, k), "missing");
  return *it;
}

const json& require_array(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

std::size_t index_in(const json& j, std::size_t bound, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer index");
  long long v = j.get<long long>();
  if (v < 0 || static_cast<std::size_t>(v) >= bound)
    bad(path, "index " + std::to_string(v) + " out of range [0, " + std::to_string(bound) + ")");
  return static_cast<std::size_t>(v);
}

Vec dense_from_json(const json& j, std::size_t n, const CyclotomicField* f, const std::string& path) {
  require_array(j, path);
  if (j.size() != n) bad(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = scalar_from_json(j[i], f, at(path, i));
  return v;
}

std::vector<std::string> labels_from_json(const json& j, const std::string& path) {
  require_array(j, path);
  if (j.empty()) bad(path, "basis must not be empty");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) bad(at(path, i), "expected a label string");
    auto s = j[i].get<std::string>();
    if (!seen.insert(s).second) bad(at(path, i), "duplicate label '" + s + "'");
    out.push_back(s);
  }
  return out;
}

// [[i, j, k, s]...] with i < n0, j < n1, k < n2
template <class Fn>
void triples(const json& j, std::size_t n0, std::size_t n1, std::size_t n2, const CyclotomicField* f,
             const std::string& path, Fn fn) {
  require_array(j, path);
  for (std::size_t t = 0; t < j.size(); ++t) {
    std::string p = at(path, t);
    const json& e = j[t];
    if (!e.is_array() || e.size() != 4) bad(p, "expected [i, j, k, scalar]");
    fn(index_in(e[0], n0, at(p, 0)), index_in(e[1], n1, at(p, 1)), index_in(e[2], n2, at(p, 2)),
       scalar_from_json(e[3], f, at(p, 3)));
  }
}

json terms_to_json(const std::vector<TermList>& terms, const CyclotomicField* f) {
  json out = json::array();
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (const auto& t : terms[i]) out.push_back({i, t.left, t.right, scalar_to_json(t.coeff, f)});
  return out;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw InputError(path + ": malformed JSON at byte " + std::to_string(e.byte));
  }
}

Scalar scalar_from_json(const json& j, const CyclotomicField* f, const std::string& path) {
  try {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_string()) return Scalar::parse(j.get<std::string>(), f);
    if (j.is_array()) {
      std::size_t d = f ? static_cast<std::size_t>(f->degree()) : 1;
      if (j.empty() || j.size() > d)
        bad(path, "expected 1 to " + std::to_string(d) + " power-basis coefficients, got " + std::to_string(j.size()));
      std::vector<Rational> c;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string() && !j[i].is_number_integer()) bad(at(path, i), "expected a \"p/q\" string");
        Scalar s;
        try {
          s = j[i].is_string() ? Scalar::parse(j[i].get<std::string>(), nullptr) : Scalar(j[i].get<long>());
        } catch (const std::invalid_argument& e) {
          bad(at(path, i), e.what());
        }
        if (!s.is_rational()) bad(at(path, i), "coefficient must be rational");
        c.push_back(s.rational_value());
      }
      return Scalar::from_coeffs(f, std::move(c));
    }
  } catch (const std::invalid_argument& e) {
    bad(path, e.what());
  }
  bad(path, "expected a scalar (array of \"p/q\" strings or a string)");
}

json scalar_to_json(const Scalar& s, const CyclotomicField* f) { return s.to_strings(f); }

json vec_to_json(const Vec& v, const CyclotomicField* f) {
  json out = json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x, f));
  return out;
}

json matrix_to_json(const Matrix& m, const CyclotomicField* f) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vec_to_json(m.row(r), f));
  return out;
}

FinDimAlgebra algebra_from_json(const json& j, const CyclotomicField* f, const std::string& path) {
  auto labels = labels_from_json(require(j, "basis", path), key(path, "basis"));
  std::size_t n = labels.size();
  std::vector<Vec> products(n * n, Vec(n));
  triples(require(j, "mult", path), n, n, n, f, key(path, "mult"),
          [&](std::size_t a, std::size_t b, std::size_t c, const Scalar& s) { products[a * n + b][c] += s; });
  Vec unit = dense_from_json(require(j, "unit", path), n, f, key(path, "unit"));
  return FinDimAlgebra(std::move(labels), std::move(products), std::move(unit));
}

json algebra_to_json(const FinDimAlgebra& a, const CyclotomicField* f) {
  std::size_t n = a.dim();
  json mult = json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec& p = a.product(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (!p[k].is_zero()) mult.push_back({i, j, k, scalar_to_json(p[k], f)});
    }
  return {{"basis", a.labels()}, {"mult", mult}, {"unit", vec_to_json(a.unit(), f)}};
}

FinDimHopf hopf_from_json(const json& j, const CyclotomicField* f, const std::string& path) {
  FinDimAlgebra alg = algebra_from_json(j, f, path);
  std::size_t n = alg.dim();
  std::vector<TermList> comult(n);
  triples(require(j, "comult", path), n, n, n, f, key(path, "comult"),
          [&](std::size_t a, std::size_t b, std::size_t c, const Scalar& s) { comult[a].push_back({s, b, c}); });
  Vec counit = dense_from_json(require(j, "counit", path), n, f, key(path, "counit"));
  const json& S = require_array(require(j, "antipode", path), key(path, "antipode"));
  std::string sp = key(path, "antipode");
  if (S.size() != n) bad(sp, "expected " + std::to_string(n) + " rows");
  Matrix antipode(n, n);
  for (std::size_t i = 0; i < n; ++i) antipode.set_column(i, dense_from_json(S[i], n, f, at(sp, i)));
  FinDimHopf h = make_hopf(std::move(alg), std::move(comult), std::move(counit), std::move(antipode));
  h.field = f;
  return h;
}

json hopf_to_json(const FinDimHopf& h, const CyclotomicField* f) {
  json out = algebra_to_json(h.algebra, f);
  out["comult"] = terms_to_json(h.comult, f);
  out["counit"] = vec_to_json(h.counit, f);
  json S = json::array();
  for (std::size_t i = 0; i < h.dim(); ++i) S.push_back(vec_to_json(h.antipode.column(i), f));
  out["antipode"] = S;
  return out;
}

ComoduleAlgebra comodule_from_json(const json& j, const FinDimHopf& h, const CyclotomicField* f,
                                   const std::string& path) {
  FinDimAlgebra alg = algebra_from_json(j, f, path);
  std::size_t n = alg.dim();
  Coaction d;
  d.dim = n;
  d.terms.resize(n);
  triples(require(j, "coaction", path), n, n, h.dim(), f, key(path, "coaction"),
          [&](std::size_t a, std::size_t b, std::size_t c, const Scalar& s) { d.terms[a].push_back({s, b, c}); });
  return attach_coaction(std::move(alg), h, std::move(d));
}

json coaction_to_json(const Coaction& c, const CyclotomicField* f) { return terms_to_json(c.terms, f); }

Cocycle cocycle_from_json(const json& j, const CyclotomicField* f, const std::string& path) {
  const json& g = require_array(require(j, "group", path), key(path, "group"));
  std::vector<int> factors;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g[i].is_number_integer() || g[i].get<long long>() < 1 || g[i].get<long long>() > 64)
      bad(at(key(path, "group"), i), "expected a cyclic factor order between 1 and 64");
    factors.push_back(g[i].get<int>());
  }
  if (factors.empty()) bad(key(path, "group"), "at least one factor is needed");
  Cocycle c;
  c.group = FiniteAbelianGroup(factors);
  std::size_t n = c.group.order();
  c.values.assign(n * n, Scalar());
  std::vector<char> seen(n * n, 0);
  std::string vp = key(path, "values");
  const json& vals = require_array(require(j, "values", path), vp);
  for (std::size_t t = 0; t < vals.size(); ++t) {
    std::string p = at(vp, t);
    const json& e = vals[t];
    if (!e.is_array() || e.size() != 3) bad(p, "expected [g, h, scalar]");
    std::size_t a = index_in(e[0], n, at(p, 0)), b = index_in(e[1], n, at(p, 1));
    if (seen[a * n + b]) bad(p, "pair (" + std::to_string(a) + ", " + std::to_string(b) + ") given twice");
    seen[a * n + b] = 1;
    Scalar s = scalar_from_json(e[2], f, at(p, 2));
    if (s.is_zero()) bad(at(p, 2), "cocycle values must be nonzero");
    c.values[a * n + b] = s;
  }
  for (std::size_t k = 0; k < n * n; ++k)
    if (!seen[k]) bad(vp, "missing pair (" + std::to_string(k / n) + ", " + std::to_string(k % n) + ")");
  return c;
}

json cocycle_to_json(const Cocycle& c, const CyclotomicField* f) {
  std::size_t n = c.group.order();
  json vals = json::array();
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) vals.push_back({g, h, scalar_to_json(c(g, h), f)});
  return {{"group", c.group.factors()}, {"values", vals}};
}

}  // namespace hg
