#include "lions/builder.hpp"
#include "lions/algebra.hpp"

#include <algorithm>
#include <cctype>

namespace lions {

BuilderExpr expr_unit() { return BuilderExpr{}; }

BuilderExpr expr_root(int label, BuilderExpr e)
{
    BuilderExpr r{BuilderExpr::Kind::Root, label, {}, {}};
    r.args.push_back(std::move(e));
    return r;
}

BuilderExpr expr_decouple(BuilderExpr e)
{
    BuilderExpr r{BuilderExpr::Kind::Decouple, 0, {}, {}};
    r.args.push_back(std::move(e));
    return r;
}

BuilderExpr expr_decouple_seq(PartSeq a, std::vector<BuilderExpr> args)
{
    if (a.size() != args.size())
        throw ExprError(ExprError::Kind::ArityMismatch, "Ea needs " + std::to_string(a.size()) + " arguments, got " + std::to_string(args.size()));
    return BuilderExpr{BuilderExpr::Kind::DecoupleSeq, 0, std::move(a), std::move(args)};
}

BuilderExpr expr_product(BuilderExpr a, BuilderExpr b)
{
    BuilderExpr r{BuilderExpr::Kind::Product, 0, {}, {}};
    r.args.push_back(std::move(a));
    r.args.push_back(std::move(b));
    return r;
}

namespace {

class Parser {
public:
    Parser(const std::string& s, int max_label) : s_(s), max_label_(max_label) {}

    BuilderExpr parse()
    {
        auto e = expr();
        skip();
        if (i_ != s_.size())
            fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg, ExprError::Kind k = ExprError::Kind::Syntax)
    {
        throw ExprError(k, msg + " at offset " + std::to_string(i_), i_);
    }

    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    bool accept(const std::string& tok)
    {
        skip();
        if (s_.compare(i_, tok.size(), tok) == 0) {
            i_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(const std::string& tok)
    {
        if (!accept(tok))
            fail("expected '" + tok + "'");
    }

    int number()
    {
        skip();
        std::size_t j = i_;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j])))
            ++j;
        if (j == i_)
            fail("expected a number");
        int v = std::stoi(s_.substr(i_, j - i_));
        i_ = j;
        return v;
    }

    BuilderExpr expr()
    {
        auto e = term();
        while (accept("*"))
            e = expr_product(std::move(e), term());
        return e;
    }

    BuilderExpr term()
    {
        skip();
        if (accept("1"))
            return expr_unit();
        if (accept("(")) {
            auto e = expr();
            expect(")");
            return e;
        }
        if (accept("[")) {
            auto e = expr();
            expect("]");
            expect("_");
            const std::size_t at = i_;
            int label = number();
            if (label < 1 || (max_label_ > 0 && label > max_label_))
                throw ExprError(ExprError::Kind::BadLabel, "label " + std::to_string(label) + " out of range at offset " + std::to_string(at), at);
            return expr_root(label, std::move(e));
        }
        if (accept("Ea")) {
            expect("{");
            expect("(");
            std::vector<Token> toks;
            if (!accept(")")) {
                do {
                    if (accept("#")) {
                        toks.push_back(Token::Tag(std::to_string(number())));
                    } else {
                        int v = number();
                        toks.push_back(v == 0 ? Token::Tag("0") : Token::Num(v));
                    }
                } while (accept(","));
                expect(")");
            }
            expect("}");
            const std::size_t at = i_;
            PartSeq a;
            try {
                a = validate_seq(toks, {"0"});
            } catch (const SeqError& e) {
                throw ExprError(ExprError::Kind::Syntax, std::string(e.what()) + " at offset " + std::to_string(at), at);
            }
            expect("(");
            std::vector<BuilderExpr> args;
            if (!accept(")")) {
                do
                    args.push_back(expr());
                while (accept(","));
                expect(")");
            }
            if (args.size() != a.size())
                throw ExprError(ExprError::Kind::ArityMismatch,
                                "Ea needs " + std::to_string(a.size()) + " arguments, got " + std::to_string(args.size()) + " at offset " + std::to_string(at), at);
            return expr_decouple_seq(std::move(a), std::move(args));
        }
        if (accept("E")) {
            expect("(");
            auto e = expr();
            expect(")");
            return expr_decouple(std::move(e));
        }
        fail("expected a term");
    }

    const std::string& s_;
    std::size_t i_ = 0;
    int max_label_;
};

} // namespace

BuilderExpr parse_expr(const std::string& text, int max_label) { return Parser(text, max_label).parse(); }

std::string print_expr(const BuilderExpr& e)
{
    using K = BuilderExpr::Kind;
    switch (e.kind) {
    case K::Unit:
        return "1";
    case K::Root:
        return "[" + print_expr(e.args[0]) + "]_" + std::to_string(e.label);
    case K::Decouple:
        return "E(" + print_expr(e.args[0]) + ")";
    case K::DecoupleSeq: {
        std::string s = "Ea{(";
        for (std::size_t i = 0; i < e.seq.size(); ++i) {
            if (i)
                s += ",";
            s += e.seq[i].is_tag ? "0" : std::to_string(e.seq[i].num);
        }
        s += ")}(";
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            if (i)
                s += ",";
            s += print_expr(e.args[i]);
        }
        return s + ")";
    }
    case K::Product: {
        std::string r = print_expr(e.args[1]);
        if (e.args[1].kind == K::Product)
            r = "(" + r + ")";
        return print_expr(e.args[0]) + " * " + r;
    }
    }
    return {};
}

LionsForest eval_expr(const BuilderExpr& e)
{
    using K = BuilderExpr::Kind;
    switch (e.kind) {
    case K::Unit:
        return unit_forest();
    case K::Root:
        return forest_root(eval_expr(e.args[0]), e.label);
    case K::Decouple:
        return forest_decouple(eval_expr(e.args[0]));
    case K::DecoupleSeq: {
        std::vector<LionsForest> fs;
        for (const auto& a : e.args)
            fs.push_back(eval_expr(a));
        return decouple_seq(e.seq, fs);
    }
    case K::Product:
        return forest_product(eval_expr(e.args[0]), eval_expr(e.args[1]));
    }
    return unit_forest();
}

namespace {

LionsForest restrict_forest(const LionsForest& t, const std::vector<int>& nodes, const TaggedPartition& hyper)
{
    std::vector<int> dense(t.size(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        dense[static_cast<std::size_t>(nodes[i])] = static_cast<int>(i);
    std::vector<int> parent, labels;
    for (int x : nodes) {
        const int p = t.parent[static_cast<std::size_t>(x)];
        parent.push_back(p < 0 || dense[static_cast<std::size_t>(p)] < 0 ? -1 : dense[static_cast<std::size_t>(p)]);
        labels.push_back(t.labels[static_cast<std::size_t>(x)]);
    }
    return make_forest(parent, labels, relabel(hyper.restrict_to(nodes), [&](int x) { return dense[static_cast<std::size_t>(x)]; }));
}

std::vector<int> descendants(const LionsForest& t, const std::vector<int>& tops)
{
    std::vector<int> out = tops;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (int c : t.children(out[i]))
            out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

BuilderExpr product_of(std::vector<BuilderExpr> parts)
{
    if (parts.empty())
        return expr_unit();
    BuilderExpr e = std::move(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i)
        e = expr_product(std::move(e), std::move(parts[i]));
    return e;
}

// All roots of t lie in the nonempty tag block.
BuilderExpr decompose_tagged(const LionsForest& t)
{
    std::vector<BuilderExpr> parts;
    for (int r : t.roots()) {
        auto below = descendants(t, {r});
        below.erase(std::find(below.begin(), below.end(), r));
        auto sub = restrict_forest(t, below, t.hyper);
        parts.push_back(expr_root(t.labels[static_cast<std::size_t>(r)], decompose_builder(sub)));
    }
    return product_of(std::move(parts));
}

} // namespace

BuilderExpr decompose_builder(const LionsForest& t)
{
    if (t.empty())
        return expr_unit();
    const auto roots = t.roots();
    std::vector<BuilderExpr> parts;
    const auto& h0 = t.hyper.tag_block("0");
    if (!h0.empty()) {
        std::vector<int> tops;
        for (int r : roots)
            if (std::binary_search(h0.begin(), h0.end(), r))
                tops.push_back(r);
        parts.push_back(decompose_tagged(restrict_forest(t, descendants(t, tops), t.hyper)));
    }
    for (const auto& b : t.hyper.blocks().blocks()) {
        std::vector<int> tops;
        for (int r : roots)
            if (std::binary_search(b.begin(), b.end(), r))
                tops.push_back(r);
        if (tops.empty())
            continue;
        // Promote b to the tag, then decouple it again.
        std::vector<Block> blocks;
        for (const auto& o : t.hyper.blocks().blocks())
            if (o != b)
                blocks.push_back(o);
        TaggedPartition promoted({{"0", b}}, Partition(std::move(blocks)));
        parts.push_back(expr_decouple(decompose_tagged(restrict_forest(t, descendants(t, tops), promoted))));
    }
    return product_of(std::move(parts));
}

ChainSum builder_coproduct(const BuilderExpr& e)
{
    using K = BuilderExpr::Kind;
    switch (e.kind) {
    case K::Unit: {
        ForestChain c = chain_of(unit_forest());
        c.ncomps = 2;
        return ChainSum(c);
    }
    case K::Root: {
        ForestChain whole = chain_of(eval_expr(e));
        whole.ncomps = 2;
        return ChainSum(whole) + chain_root_right(builder_coproduct(e.args[0]), e.label);
    }
    case K::Decouple:
        return chain_decouple(builder_coproduct(e.args[0]));
    case K::DecoupleSeq: {
        std::vector<BuilderExpr> groups(static_cast<std::size_t>(e.seq.max_num()) + 1);
        std::vector<std::vector<BuilderExpr>> members(groups.size());
        for (std::size_t i = 0; i < e.seq.size(); ++i)
            members[e.seq[i].is_tag ? 0 : static_cast<std::size_t>(e.seq[i].num)].push_back(e.args[i]);
        std::vector<BuilderExpr> parts;
        for (std::size_t j = 0; j < members.size(); ++j) {
            auto p = product_of(std::move(members[j]));
            parts.push_back(j == 0 ? std::move(p) : expr_decouple(std::move(p)));
        }
        return builder_coproduct(product_of(std::move(parts)));
    }
    case K::Product:
        return twisted_product(builder_coproduct(e.args[0]), builder_coproduct(e.args[1]));
    }
    return {};
}

} // namespace lions
