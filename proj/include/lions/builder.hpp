#pragma once

#include "lions/forests.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace lions {

class ExprError : public std::runtime_error {
public:
    enum class Kind { Syntax, ArityMismatch, BadLabel };
    ExprError(Kind k, const std::string& what, std::size_t offset = 0) : std::runtime_error(what), kind(k), offset(offset) {}
    Kind kind;
    std::size_t offset;
};

struct BuilderExpr {
    enum class Kind { Unit, Root, Decouple, DecoupleSeq, Product };
    Kind kind = Kind::Unit;
    int label = 0;             // Root
    PartSeq seq;               // DecoupleSeq
    std::vector<BuilderExpr> args;

    friend bool operator==(const BuilderExpr& a, const BuilderExpr& b)
    {
        return a.kind == b.kind && a.label == b.label && a.seq == b.seq && a.args == b.args;
    }
};

BuilderExpr expr_unit();
BuilderExpr expr_root(int label, BuilderExpr e);
BuilderExpr expr_decouple(BuilderExpr e);
BuilderExpr expr_decouple_seq(PartSeq a, std::vector<BuilderExpr> args);
BuilderExpr expr_product(BuilderExpr a, BuilderExpr b);

// Grammar:
//   expr := term ('*' term)*
//   term := '1' | '[' expr ']_' label | 'E(' expr ')' | 'Ea{(' tokens ')}(' expr (',' expr)* ')' | '(' expr ')'
// Tokens of Ea are 0 (the tag) or positive numbers; '#0' is accepted for the tag.
BuilderExpr parse_expr(const std::string& text, int max_label = 0);
std::string print_expr(const BuilderExpr& e);

LionsForest eval_expr(const BuilderExpr& e);
BuilderExpr decompose_builder(const LionsForest& t);

// Coproduct computed from the expression alone: seeded by the unit and
// driven by the rooting, decoupling and product rules.
ChainSum builder_coproduct(const BuilderExpr& e);

} // namespace lions
