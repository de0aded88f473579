#include <filesystem>

#include "doctest.h"
#include "jetdiff/dispatch.hpp"

using namespace jetdiff;

namespace {

RunConfig config(std::string command, std::map<std::string, std::string> params, unsigned workers = 1) {
  RunConfig c;
  c.command = std::move(command);
  c.params = std::move(params);
  c.workers = workers;
  c.use_cache = false;
  return c;
}

ErrorKind kind_of(const RunConfig& c) {
  try {
    dispatch(c);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

/// Floats may only appear as the "approx" member of a rendered rational.
bool floats_only_in_approx(const Json& j) {
  if (j.is_number_float()) return false;
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      if (!(key == "approx" && value.is_number_float()) && !floats_only_in_approx(value)) return false;
  } else if (j.is_array()) {
    for (const auto& v : j)
      if (!floats_only_in_approx(v)) return false;
  }
  return true;
}

Json without_cache_status(Json j) {
  j.erase("closed_form");
  return j;
}

}  // namespace

TEST_CASE("chern command") {
  const auto rec = dispatch(config("chern", {{"ambient", "4"}, {"degree", "5"}}));
  CHECK(rec.result["integral_c3"] == "-200");
  const auto symbolic = dispatch(config("chern", {{"ambient", "3"}}));
  CHECK(symbolic.result["integral_c2"] == "d^3 - 4*d^2 + 6*d");
  CHECK(rec.to_json()["engine_version"] == "1.0.0");
  CHECK(floats_only_in_approx(rec.result));
}

TEST_CASE("verify command") {
  const auto rec = dispatch(config("verify", {{"suite", "relationR"}}));
  CHECK(rec.result["failures"].empty());
  CHECK(kind_of(config("verify", {{"suite", "nonsense"}})) == ErrorKind::InvalidArgument);
}

TEST_CASE("threshold command") {
  const auto rec = dispatch(config("threshold", {{"criterion", "chi3-positive"}}));
  CHECK(rec.result["d_min"] == 43);
  CHECK(rec.result["routes_agree"] == true);
  CHECK(floats_only_in_approx(rec.result));
  const auto tw = dispatch(config("threshold", {{"criterion", "twisted-surface"}, {"params", "delta=1/5"}}));
  CHECK(tw.result["d_min"] == 231);
}

TEST_CASE("feasibility command") {
  const auto rec = dispatch(config("feasibility", {{"region", "twisted-threefold"}, {"params", "d=1000,delta=1/18"}}));
  CHECK(rec.result["feasible"] == false);
  CHECK(kind_of(config("feasibility", {{"region", "twisted-threefold"}, {"params", "d=1000"}})) ==
        ErrorKind::MissingParam);
}

TEST_CASE("vector field commands") {
  const auto t = dispatch(config("tangency", {{"degree", "4"}, {"order", "2"}, {"family", "V210"}}, 2));
  CHECK(floats_only_in_approx(t.result));
  const auto s = dispatch(config("span", {{"degree", "4"}, {"order", "1"}, {"seed", "3"}}));
  CHECK(s.result["rank"] == s.result["tangent_dimension"]);
}

TEST_CASE("errors map to exit codes") {
  CHECK(kind_of(config("frobnicate", {})) == ErrorKind::UnknownCommand);
  CHECK(kind_of(config("chern", {{"degree", "5"}})) == ErrorKind::MissingParam);
  CHECK(kind_of(config("chern", {{"ambient", "4"}, {"degree", "five"}})) == ErrorKind::InvalidArgument);
  CHECK(exit_code_for(ErrorKind::UnknownCommand) == 2);
  CHECK(exit_code_for(ErrorKind::MissingParam) == 2);
  CHECK(exit_code_for(ErrorKind::NoThresholdFound) == 3);
  CHECK(exit_code_for(ErrorKind::IoFailure) == 4);
  const Json err = error_record("chern", ErrorKind::MissingParam, "missing");
  CHECK(err["error"]["kind"] == "MissingParam");
}

TEST_CASE("assignment parsing") {
  const auto a = parse_assignments("d=5, delta=1/5");
  CHECK(a.at("d") == Rational(5));
  CHECK(a.at("delta") == Rational(1, 5));
  CHECK_THROWS_AS(parse_assignments("d"), Error);
}

TEST_CASE("result payloads do not depend on the worker count") {
  for (const auto& [cmd, params] : std::vector<std::pair<std::string, std::map<std::string, std::string>>>{
           {"chi", {{"k", "3"}, {"dim", "3"}, {"m", "120"}, {"degree", "43"}}},
           {"h2-bound", {{"m", "90"}, {"degree", "97"}}},
           {"chi-leading", {{"k", "2"}, {"dim", "2"}, {"degree", "15"}}}}) {
    const Json one = without_cache_status(dispatch(config(cmd, params, 1)).result);
    CHECK(floats_only_in_approx(one));
    CHECK(without_cache_status(dispatch(config(cmd, params, 4)).result) == one);
  }
}

TEST_CASE("cache command") {
  const auto path = std::filesystem::temp_directory_path() / "jetdiff-cli-test.cache";
  std::filesystem::remove(path);
  RunConfig c = config("cache", {{"action", "inspect"}});
  c.cache_path = path;
  c.use_cache = true;
  CHECK(dispatch(c).result["entries"].empty());
  RunConfig chi = config("chi", {{"k", "1"}, {"dim", "2"}, {"m", "4"}, {"degree", "5"}});
  chi.cache_path = path;
  chi.use_cache = true;
  dispatch(chi);
  c.params["action"] = "clear";
  dispatch(c);
  CHECK_FALSE(std::filesystem::exists(path));
  c.params["action"] = "explode";
  CHECK(kind_of(c) == ErrorKind::InvalidArgument);
}
