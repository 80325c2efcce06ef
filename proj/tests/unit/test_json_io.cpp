#include <filesystem>
#include <functional>
#include <fstream>

#include "doctest.h"
#include "hopfgauge/galois.hpp"
#include "hopfgauge/json_io.hpp"

using namespace hg;

namespace {

// e.what() starts with the expected path
std::string error_path(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    std::string w = e.what();
    return w.substr(0, w.find(':'));
  }
  return "<no error>";
}

json t2_json() { return hopf_to_json(build_taft(CyclotomicField::get(2), 2, 1), &CyclotomicField::get(2)); }

}  // namespace

TEST_SUITE("json_io") {
  TEST_CASE("scalars") {
    const auto& f = CyclotomicField::get(4);
    Scalar i = Scalar::zeta(f, 1);
    CHECK(scalar_from_json(json::array({"0", "1"}), &f, "$") == i);
    CHECK(scalar_from_json("zeta^1", &f, "$") == i);
    CHECK(scalar_from_json("-3/6", &f, "$") == Scalar(Rational(-1, 2)));
    CHECK(scalar_from_json(7, &f, "$") == Scalar(7));
    CHECK(scalar_to_json(i, &f) == json::array({"0/1", "1/1"}));
    CHECK(scalar_to_json(Scalar(Rational(2, 3)), &f) == json::array({"2/3", "0/1"}));
    CHECK(scalar_from_json(scalar_to_json(Scalar(1) + i * Scalar(Rational(5, 7)), &f), &f, "$") ==
          Scalar(1) + i * Scalar(Rational(5, 7)));
    CHECK(error_path([&] { scalar_from_json(json::array({"1", "0", "2"}), &f, "$.x"); }) == "$.x");
    CHECK(error_path([&] { scalar_from_json(json::array({"1", "a/b"}), &f, "$.x"); }) == "$.x[1]");
    CHECK(error_path([&] { scalar_from_json(json::object(), &f, "$.y"); }) == "$.y");
    CHECK(error_path([&] { scalar_from_json("1/0", &f, "$.z"); }) == "$.z");
  }

  TEST_CASE("Hopf algebras round trip") {
    for (int n : {2, 3}) {
      const auto& f = CyclotomicField::get(n);
      auto T = build_taft(f, n, 1);
      auto back = hopf_from_json(hopf_to_json(T, &f), &f);
      CHECK(back.labels() == T.labels());
      CHECK(back.counit == T.counit);
      CHECK(back.antipode == T.antipode);
      for (std::size_t i = 0; i < T.dim(); ++i) {
        CHECK(back.coproduct(T.algebra.basis_vector(i)) == T.coproduct(T.algebra.basis_vector(i)));
        for (std::size_t j = 0; j < T.dim(); ++j) CHECK(back.algebra.product(i, j) == T.algebra.product(i, j));
      }
      CHECK(verify_hopf(back).ok());
      CHECK(hopf_to_json(back, &f) == hopf_to_json(T, &f));
    }
    auto G = build_group_algebra({2, 3});
    CHECK(verify_hopf(hopf_from_json(hopf_to_json(G, nullptr), nullptr)).ok());
  }

  TEST_CASE("comodule algebras and cocycles round trip") {
    const auto& f = CyclotomicField::get(3);
    auto A = build_taft_galois(f, 3, 1, Scalar(2));
    json j = algebra_to_json(A.algebra, &f);
    j["coaction"] = coaction_to_json(A.coaction, &f);
    auto back = comodule_from_json(j, A.hopf, &f);
    CHECK(back.base_dim() == 1);
    CHECK(coaction_matrix(back.coaction, 9) == coaction_matrix(A.coaction, 9));
    CHECK(build_galois(back).is_galois);

    const auto& f4 = CyclotomicField::get(4);
    Cocycle sign = bilinear_cocycle(FiniteAbelianGroup({2, 2}), 1, 0, Scalar(-1));
    auto c = cocycle_from_json(cocycle_to_json(sign, &f4), &f4);
    CHECK(c.values == sign.values);
    CHECK(c.group.factors() == sign.group.factors());
  }

  TEST_CASE("diagnostics name the JSON path") {
    const auto* f = &CyclotomicField::get(2);
    json h = t2_json();
    json bad = h;
    bad["mult"][3][2] = 4;
    CHECK(error_path([&] { hopf_from_json(bad, f); }) == "$.mult[3][2]");
    bad = h;
    bad.erase("unit");
    CHECK(error_path([&] { hopf_from_json(bad, f); }) == "$.unit");
    bad = h;
    bad["counit"][1] = "x";
    CHECK(error_path([&] { hopf_from_json(bad, f); }) == "$.counit[1]");
    bad = h;
    bad["basis"][2] = "g";
    CHECK(error_path([&] { hopf_from_json(bad, f); }) == "$.basis[2]");
    bad = h;
    bad["antipode"][0] = json::array({"1"});
    CHECK(error_path([&] { hopf_from_json(bad, f); }) == "$.antipode[0]");
    bad = h;
    bad["comult"][0] = json::array({0, 0});
    CHECK(error_path([&] { hopf_from_json(bad, f); }) == "$.comult[0]");
    CHECK(error_path([&] { hopf_from_json(json::array(), f); }) == "$");

    json c = cocycle_to_json(constant_cocycle(FiniteAbelianGroup({2}), Scalar(1)), f);
    json cb = c;
    cb["values"].erase(cb["values"].begin() + 1);
    CHECK(error_path([&] { cocycle_from_json(cb, f); }) == "$.values");
    cb = c;
    cb["values"][1] = cb["values"][0];
    CHECK(error_path([&] { cocycle_from_json(cb, f); }) == "$.values[1]");
    cb = c;
    cb["values"][2][2] = "0";
    CHECK(error_path([&] { cocycle_from_json(cb, f); }) == "$.values[2][2]");
    cb = c;
    cb["group"] = json::array({0});
    CHECK(error_path([&] { cocycle_from_json(cb, f); }) == "$.group[0]");
  }

  TEST_CASE("files") {
    auto dir = std::filesystem::temp_directory_path() / "hg_json_io_test";
    std::filesystem::create_directories(dir);
    auto good = (dir / "good.json").string(), broken = (dir / "broken.json").string();
    std::ofstream(good) << t2_json().dump();
    std::ofstream(broken) << "{\"basis\": [";
    CHECK(hopf_from_json(read_json_file(good), &CyclotomicField::get(2)).dim() == 4);
    CHECK_THROWS_AS(read_json_file(broken), InputError);
    CHECK_THROWS_AS(read_json_file((dir / "missing.json").string()), InputError);
    std::filesystem::remove_all(dir);
  }
}
