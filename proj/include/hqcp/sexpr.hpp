#pragma once

#include <string>
#include <vector>

#include "hqcp/errors.hpp"

namespace hqcp {

// S-expression node. Symbols are case-insensitive and stored lower-case,
// numbers are decimal reals, `;` comments run to end of line.
struct SExpr {
    enum class Kind { Symbol, Number, List };

    Kind kind = Kind::List;
    std::string text;          // Symbol
    double number = 0.0;       // Number
    std::vector<SExpr> items;  // List
    SourceSpan span;

    bool isSymbol(const std::string& s) const {
        return kind == Kind::Symbol && text == s;
    }
    std::string str() const;
};

// Parses a full text into the top-level expression list.
std::vector<SExpr> parseSExprs(const std::string& text,
                               const std::string& file = "");

}  // namespace hqcp
