#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rkg/errors.hpp"

namespace rkg {

struct SourcePos {
  int line = 1;
  int col = 1;
};

// Expression tree of the workbench grammar:
//
//   expr   := star ('**' star)*              (star is left-associative)
//   star   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' ('-'? INT))?
//   atom   := INT | NAME | 'X' '[' raw ']' | 'x' '[' raw (',' INT)? ']'
//           | '[' raw ']' | '[[' rows ']]' | '(' expr ')'
//
// Bracketed `raw` text holds a group element in the backend syntax and is
// resolved by the evaluator against the active group context.
struct Expr {
  enum class Kind {
    Int,      // ival
    Name,     // text
    Group,    // text = raw element
    XVar,     // text = raw element (near-ring variable)
    CellVar,  // text = raw element, coord = 1-based coordinate or -1
    Neg,      // kids[0]
    Add,
    Sub,
    Mul,
    Div,
    Pow,      // kids[0], ival = exponent
    Star,
    Matrix,   // rows x cols kids, row-major
  };

  Kind kind = Kind::Int;
  SourcePos pos;
  long long ival = 0;
  std::string text;
  int coord = -1;
  int rows = 0, cols = 0;
  std::vector<Expr> kids;
};

Expr parse_expression(std::string_view src);

// Splits a command tail on top-level `;` (separators inside any kind of
// bracket are ignored).
std::vector<std::string> split_top_level(std::string_view src, char sep);

}  // namespace rkg
