#include "lions/algebra.hpp"
#include "lions/builder.hpp"
#include "lions/forest_io.hpp"
#include "lions/lions_calculus.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace lions;

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_arg(const std::string& arg)
{
    if (!std::filesystem::is_regular_file(arg))
        return arg;
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// The single-tag case prints tags as 0, matching the usual (0,1,1,2) notation.
std::string seq_text(const PartSeq& a)
{
    if (a.tags() != TagSet{"0"})
        return a.str();
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i)
            s += ",";
        s += a[i].is_tag ? "0" : std::to_string(a[i].num);
    }
    return s + ")";
}

std::vector<PartSeq> seqs(int n, int tags)
{
    if (n < 0 || tags < 1)
        throw Usage("--n must be >= 0 and --tags >= 1");
    return enumerate_seqs(n, default_tags(tags));
}

std::vector<TaggedPartition> admissible(const LionsForest& t, bool root_tagged)
{
    auto all = enumerate_admissible(t.parent, t.hyper.tag_set());
    std::vector<TaggedPartition> out;
    const auto roots = t.roots();
    for (auto& tp : all) {
        if (root_tagged) {
            bool hit = false;
            for (const auto& [tag, blk] : tp.tags())
                for (int r : roots)
                    hit = hit || std::binary_search(blk.begin(), blk.end(), r);
            if (!hit)
                continue;
        }
        out.push_back(t.ids.size() == t.size() ? relabel(tp, [&](int x) { return t.ids[static_cast<std::size_t>(x)]; }) : tp);
    }
    return out;
}

bool is_json(const std::string& text) { return nlohmann::json::accept(text); }

struct CouplingOut {
    std::vector<std::string> lines;
};

CouplingOut coupling_lines(const std::string& left, const std::string& right, bool lions_only)
{
    const std::string l = read_arg(left), r = read_arg(right);
    CouplingOut out;
    if (lions_only) {
        if (!is_json(l) || !is_json(r))
            throw Usage("--lions needs forest documents on both sides");
        for (const auto& c : lions_couplings(forest_from_json(l), forest_from_json(r)))
            out.lines.push_back(chain_str(c));
        return out;
    }
    const Partition p = is_json(l) ? forest_from_json(l).hyper.prime() : parse_partition(l);
    const Partition q = is_json(r) ? forest_from_json(r).hyper.prime() : parse_partition(r);
    for (const auto& g : couplings(p, q))
        out.lines.push_back(g.joint.str());
    return out;
}

LionsForest eval_all(const std::vector<std::string>& exprs)
{
    if (exprs.empty())
        throw Usage("--expr is required");
    LionsForest t = unit_forest();
    for (const auto& e : exprs)
        t = forest_product(t, eval_expr(parse_expr(e)));
    return t;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

int taylor_check(int degree, int particles, int trials, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    long fic = 0, tay = 0, sch = 0, fic_ok = 0, tay_ok = 0, sch_ok = 0;
    std::uniform_int_distribution<int> n_dist(1, particles), len_dist(0, 3);
    for (int t = 0; t < trials; ++t) {
        const MomentPoly f = random_moment_poly(rng, degree);
        const int n = n_dist(rng);
        const int i = std::uniform_int_distribution<int>(1, n)(rng);
        std::vector<long> idx(static_cast<std::size_t>(len_dist(rng)));
        for (auto& p : idx)
            p = std::uniform_int_distribution<int>(1, n)(rng);
        ++fic;
        fic_ok += finite_identity_check(f, n, i, idx);

        const DiscreteCoupling pi = random_coupling(rng, n);
        const Rational x0 = random_rational(rng), y0 = random_rational(rng);
        ++tay;
        tay_ok += taylor_expand_exact(f, x0, y0, pi, f.p.weighted_degree()) == eval_at(f, ExpansionPoint{x0, y0, {}, pi}, true);

        for (int len = 0; len <= 3; ++len)
            for (const auto& a : enumerate_seqs(len, {"0"})) {
                std::vector<int> sigma(static_cast<std::size_t>(len));
                std::iota(sigma.begin(), sigma.end(), 0);
                do {
                    ++sch;
                    sch_ok += schwarz_check(f, a, sigma);
                } while (std::next_permutation(sigma.begin(), sigma.end()));
            }
    }
    std::cout << "finite_identity " << fic_ok << "/" << fic << "\n";
    std::cout << "taylor_exact " << tay_ok << "/" << tay << "\n";
    std::cout << "schwarz " << sch_ok << "/" << sch << "\n";
    return fic_ok == fic && tay_ok == tay && sch_ok == sch ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Lions forests, couplings and their coupled bialgebras"};
    app.require_subcommand(1);

    int n = 0, tags = 1;
    auto* enum_seq = app.add_subcommand("enum-seq", "list partition sequences of length n");
    enum_seq->add_option("--n", n)->required();
    enum_seq->add_option("--tags", tags);

    std::string forest_file;
    bool root_tagged = false;
    auto* enum_adm = app.add_subcommand("enum-admissible", "list admissible decorations of a forest");
    enum_adm->add_option("--forest", forest_file)->required();
    enum_adm->add_flag("--root-tagged", root_tagged);

    std::string left, right;
    bool lions_only = false;
    auto* coup = app.add_subcommand("couplings", "list couplings of two partitions or forests");
    coup->add_option("--left", left)->required();
    coup->add_option("--right", right)->required();
    coup->add_flag("--lions", lions_only);

    std::vector<std::string> exprs;
    bool as_json = false;
    auto* product = app.add_subcommand("product", "product of builder expressions");
    product->add_option("--expr", exprs)->required();
    product->add_flag("--json", as_json);
    auto* coproduct = app.add_subcommand("coproduct", "coupled coproduct of a builder expression");
    coproduct->add_option("--expr", exprs)->required();
    coproduct->add_flag("--json", as_json);
    auto* canon = app.add_subcommand("canon", "canonical key and normal form of an expression");
    canon->add_option("--expr", exprs)->required();

    std::string family = "forests", axioms = "assoc,comm,unit,coassoc,counit,bialgebra,grading", fault = "none";
    int max_size = 3, threads = 0;
    std::uint64_t seed = 1;
    auto* verify = app.add_subcommand("verify", "check the bialgebra laws exhaustively");
    verify->add_option("--family", family)->check(CLI::IsMember({"words", "forests"}));
    verify->add_option("--max-size", max_size);
    verify->add_option("--axioms", axioms);
    verify->add_option("--seed", seed);
    verify->add_option("--threads", threads);
    verify->add_option("--fault", fault)->check(CLI::IsMember({"none", "drop", "double"}));
    verify->add_flag("--json", as_json);

    int degree = 3, particles = 4, trials = 100;
    auto* taylor = app.add_subcommand("taylor-check", "random checks of the Lions derivative calculus");
    taylor->add_option("--degree", degree);
    taylor->add_option("--particles", particles);
    taylor->add_option("--trials", trials);
    taylor->add_option("--seed", seed);

    std::string out_file;
    auto* dot = app.add_subcommand("dot", "render a forest as Graphviz DOT");
    dot->add_option("--expr", exprs);
    dot->add_option("--forest", forest_file);
    dot->add_option("-o", out_file);

    std::string what;
    auto* count = app.add_subcommand("count", "count sequences, decorations or couplings");
    count->add_option("--what", what)->required()->check(CLI::IsMember({"seqs", "admissible", "couplings"}));
    count->add_option("--n", n);
    count->add_option("--tags", tags);
    count->add_option("--forest", forest_file);
    count->add_flag("--root-tagged", root_tagged);
    count->add_option("--left", left);
    count->add_option("--right", right);
    count->add_flag("--lions", lions_only);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*enum_seq) {
            for (const auto& a : seqs(n, tags))
                std::cout << seq_text(a) << "\n";
        } else if (*enum_adm) {
            for (const auto& tp : admissible(load_forest(forest_file), root_tagged))
                std::cout << tp.str() << "\n";
        } else if (*coup) {
            for (const auto& line : coupling_lines(left, right, lions_only).lines)
                std::cout << line << "\n";
        } else if (*product) {
            const LionsForest t = eval_all(exprs);
            std::cout << (as_json ? forest_to_json(t) : print_expr(decompose_builder(t)) + "\n");
        } else if (*coproduct) {
            if (exprs.size() != 1)
                throw Usage("coproduct takes one --expr");
            const ChainSum d = forest_coproduct(eval_expr(parse_expr(exprs[0])));
            if (as_json) {
                nlohmann::ordered_json j;
                j["format"] = "lions-coproduct/1";
                j["terms"] = nlohmann::ordered_json::array();
                for (const auto& [k, t] : d.terms()) {
                    nlohmann::ordered_json factors = nlohmann::ordered_json::array();
                    for (int c = 0; c < t.basis.ncomps; ++c)
                        factors.push_back(print_expr(decompose_builder(t.basis.component(c))));
                    j["terms"].push_back({{"coeff", t.coeff.get_str()}, {"key", k}, {"factors", factors}, {"joint", t.basis.joint.str()}});
                }
                std::cout << j.dump(2) << "\n";
            } else {
                for (const auto& [k, t] : d.terms())
                    std::cout << t.coeff.get_str() << " * " << chain_str(t.basis) << "\n";
            }
        } else if (*canon) {
            const LionsForest t = eval_all(exprs);
            std::cout << canonical_key(t) << "\n" << print_expr(decompose_builder(t)) << "\n";
        } else if (*verify) {
            const Fault f = fault == "drop" ? Fault::DropTerm : fault == "double" ? Fault::DoubleTerm : Fault::None;
            const VerifyReport rep = verify_axioms(family, max_size, split_list(axioms), f, threads);
            std::cout << (as_json ? rep.json() : rep.text());
            return rep.pass() ? 0 : 1;
        } else if (*taylor) {
            return taylor_check(degree, particles, trials, seed);
        } else if (*dot) {
            LionsForest t;
            if (!forest_file.empty())
                t = load_forest(forest_file);
            else
                t = eval_all(exprs);
            const std::string text = forest_to_dot(t);
            if (out_file.empty()) {
                std::cout << text;
            } else {
                std::ofstream o(out_file);
                if (!o)
                    throw Usage("cannot write " + out_file);
                o << text;
            }
        } else if (*count) {
            std::size_t c = 0;
            if (what == "seqs")
                c = seqs(n, tags).size();
            else if (what == "admissible") {
                if (forest_file.empty())
                    throw Usage("--what admissible needs --forest");
                c = admissible(load_forest(forest_file), root_tagged).size();
            } else {
                if (left.empty() || right.empty())
                    throw Usage("--what couplings needs --left and --right");
                c = coupling_lines(left, right, lions_only).lines.size();
            }
            std::cout << c << "\n";
        }
    } catch (const Usage& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
