#pragma once

/// String ids for problems: "cec2013/f7", "study/elliptic-d20",
/// "study/rosenbrock-d20", "study/sphere-d5".

#include "ceda/benchmarks/cec2013.hpp"
#include "ceda/benchmarks/study.hpp"

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ceda::bench {

class UnknownProblem : public std::invalid_argument {
 public:
  explicit UnknownProblem(const std::string& id) : std::invalid_argument("unknown problem id '" + id + "'") {}
};

namespace detail {

inline bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace detail

inline Problem make_problem(const std::string& id) {
  const std::string_view sv(id);
  if (sv.starts_with("cec2013/f")) {
    int k = 0;
    if (!detail::parse_int(sv.substr(9), k) || k < 1 || k > 20) throw UnknownProblem(id);
    return make_cec2013_problem(k);
  }
  if (sv.starts_with("study/")) {
    const auto rest = sv.substr(6);
    const auto dash = rest.rfind("-d");
    if (dash == std::string_view::npos) throw UnknownProblem(id);
    int dim = 0;
    if (!detail::parse_int(rest.substr(dash + 2), dim) || dim < 2 || dim > 1000) throw UnknownProblem(id);
    const auto fn = rest.substr(0, dash);
    if (fn == "elliptic") return make_cec2005_study_problem(StudyFunction::elliptic, dim);
    if (fn == "rosenbrock") return make_cec2005_study_problem(StudyFunction::rosenbrock, dim);
    if (fn == "sphere") return make_cec2005_study_problem(StudyFunction::sphere, dim);
  }
  throw UnknownProblem(id);
}

}  // namespace ceda::bench
