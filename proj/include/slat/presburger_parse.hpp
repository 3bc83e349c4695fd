#pragma once

#include <map>
#include <string>

#include "slat/presburger.hpp"

namespace slat {
namespace pa {

struct ParsedFormula {
  FormulaPtr formula;
  std::map<std::string, VarId> variables;
};

// S-expression syntax:
//   formula := true | false
//            | (and f ...) | (or f ...) | (not f)
//            | (exists <var> f) | (forall <var> f)
//            | (<= t t) | (< t t) | (>= t t) | (> t t) | (= t t)
//            | (divides <nat> t)
//   term    := <integer> | <var> | (+ t ...) | (- t t) | (* <integer> t)
ParsedFormula parse_formula(const std::string& text);

}  // namespace pa
}  // namespace slat
