#pragma once

#include <string>

#include "causalg/polynomial.hpp"

namespace causalg {

/// Recursive-descent parser for the polynomial expression grammar:
///
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' posint)?
///   base   := rational | identifier | '(' expr ')'
///
/// `rational` is int('/'posint)?; decimal literals are rejected. An
/// identifier may carry a parenthesized argument list whose tokens are
/// stored verbatim as part of the variable name, so `pi(X3=1|X1=2,X2=1)`
/// is a single variable. Unknown identifiers are registered with `kind`
/// when the table is mutable and rejected when it is frozen.
Polynomial parse_polynomial(const std::string& text, const TablePtr& table,
                            VarKind kind = VarKind::Parameter);

}  // namespace causalg
