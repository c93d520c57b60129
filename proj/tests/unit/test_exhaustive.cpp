#include <stdexcept>
#include <map>
#include <set>

#include "doctest.h"
#include "oracle.hpp"

#include "cvwalk/exhaustive.hpp"
#include "cvwalk/transform.hpp"

using namespace cvw;

TEST_CASE("enumerate_paths") {
  const auto zero = enumerate_paths(0);
  CHECK(zero.size() == 1);
  CHECK((*zero.begin()).empty());
  CHECK(enumerate_paths(2).size() == 4);
  std::vector<IncrementPath> three(enumerate_paths(3).begin(), enumerate_paths(3).end());
  REQUIRE(three.size() == 8);
  CHECK(three.front() == oracle::path("---"));
  CHECK(three.back() == oracle::path("+++"));
  CHECK(three[1] == oracle::path("--+"));
  CHECK_THROWS_AS(enumerate_paths(25), std::invalid_argument);
}

TEST_CASE("enumeration order matches the reference and path_index inverts path_at") {
  const auto ref = oracle::all_paths(9);
  std::uint64_t i = 0;
  for (const auto& p : enumerate_paths(9)) {
    REQUIRE(oracle::steps(p) == ref[i]);
    REQUIRE(path_index(p) == i);
    REQUIRE(path_at(9, i) == p);
    ++i;
  }
  CHECK(i == 512);
}

TEST_CASE("measure preserving examples") {
  // T(++) = T(--) = (+), T(+-) = T(-+) = (-)
  CHECK(transform(oracle::path("++")) == oracle::path("+"));
  CHECK(transform(oracle::path("--")) == oracle::path("+"));
  CHECK(transform(oracle::path("+-")) == oracle::path("-"));
  CHECK(transform(oracle::path("-+")) == oracle::path("-"));
  for (std::size_t n : {1u, 2u, 10u}) {
    const auto r = check_measure_preserving(n);
    CHECK(r.pass);
    CHECK(r.max_deviation == 0);
    CHECK(r.paths_examined == (std::uint64_t{1} << n));
    CHECK_FALSE(r.counterexample.has_value());
  }
}

TEST_CASE("measure preserving against a reference count") {
  std::map<oracle::Steps, int> counts;
  for (const auto& s : oracle::all_paths(8)) ++counts[oracle::transform_midpoint(s)];
  CHECK(counts.size() == 128);
  for (const auto& [image, c] : counts) CHECK(c == 2);
}

TEST_CASE("bijection") {
  CHECK(check_bijection(1).pass);
  CHECK(check_bijection(2).pass);
  const auto r = check_bijection(12);
  CHECK(r.pass);
  CHECK(r.paths_examined == 4096);
}

TEST_CASE("bijection codes for n = 2") {
  std::set<std::string> codes;
  for (const auto& p : enumerate_paths(2)) {
    const auto c = encode(p);
    codes.insert(oracle::text(oracle::Steps(c.signs().begin(), c.signs().end())));
  }
  CHECK(codes == std::set<std::string>{"++", "+-", "--", "-+"});
}

TEST_CASE("independence") {
  const auto table = independence_table(2, 1);
  CHECK(table.total() == 4);
  CHECK(table.cells() == 4);
  for (const auto& [key, c] : table.entries()) CHECK(c == 1);
  CHECK(check_independence(2, 1).pass);
  CHECK(check_independence(7, 0).pass);
  const auto r = check_independence(12, 4);
  CHECK(r.pass);
  CHECK(r.h == std::optional<std::size_t>(4));
  CHECK_THROWS(check_independence(5, 5));
  CHECK_THROWS(check_independence(21, 1));
}

TEST_CASE("independence with h = n - 1 agrees with bijection") {
  for (std::size_t n = 2; n <= 10; ++n) {
    CHECK(check_independence(n, n - 1).pass == check_bijection(n).pass);
  }
}

TEST_CASE("reflection bound") {
  CHECK(check_reflection_bound(1).max_deviation == 0);
  const auto six = check_reflection_bound(6);
  CHECK(six.pass);
  CHECK(six.max_deviation == 2);
  // the hand example attains 2 at k = 2
  const auto y = reflected(transform(oracle::path("++---+")));
  CHECK(std::abs(y[2] - 2) == 2);
  const auto r = check_reflection_bound(14);
  CHECK(r.pass);
  CHECK(r.max_deviation == 2);
}

TEST_CASE("tau identity and sign flip") {
  for (std::size_t n : {1u, 2u, 6u, 12u}) {
    const auto t = check_tau_identity(n);
    CHECK(t.pass);
    CHECK(t.max_deviation == 0);
    CHECK(check_sign_flip(n).pass);
    CHECK(check_form_equivalence(n).pass);
    CHECK(check_round_trip(n).pass);
  }
  CHECK(check_tau_identity(12).paths_examined == 4096);
}

TEST_CASE("all checks pass exactly for n <= 14, h <= 6") {
  for (std::size_t n = 1; n <= 14; ++n) {
    REQUIRE(check_measure_preserving(n).pass);
    REQUIRE(check_bijection(n).pass);
    REQUIRE(check_reflection_bound(n).pass);
    REQUIRE(check_tau_identity(n).pass);
    REQUIRE(check_sign_flip(n).pass);
    for (std::size_t h = 0; h <= std::min<std::size_t>(6, n - 1); ++h) {
      REQUIRE(check_independence(n, h).pass);
    }
  }
}

TEST_CASE("threaded runs report the same as serial ones") {
  for (const auto& name : check_names()) {
    const auto a = run_check(name, 11, 3, {1});
    const auto b = run_check(name, 11, 3, {4});
    CHECK(a.pass == b.pass);
    CHECK(a.max_deviation == b.max_deviation);
    CHECK(a.paths_examined == b.paths_examined);
  }
  CHECK_THROWS(run_check("no_such_check", 4, 1, {}));
}
