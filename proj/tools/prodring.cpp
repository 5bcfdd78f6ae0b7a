#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "prodring/pipeline.hpp"

using namespace prodring;

namespace {

struct CliConfig {
    std::string input;
    std::string file;
    bool json = false;
    long oracle_check = 30;
    long max_relation_exponent = 64;
    long precision = 128;
    long from = 0, to = 10;
    long n_max = 40, exp_bound = 3;
};

std::string read_input(const CliConfig& c) {
    if (!c.file.empty()) {
        std::ifstream in(c.file);
        if (!in) throw Error("cannot read " + c.file);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    if (c.input.empty()) throw Error("no input expression");
    return c.input;
}

GoConfig go_config(const CliConfig& c) {
    GoConfig g;
    g.max_exponent = c.max_relation_exponent;
    g.precision = static_cast<mpfr_prec_t>(c.precision);
    g.max_precision = std::max<mpfr_prec_t>(g.max_precision, g.precision);
    return g;
}

void print_products(const RpeResult& r) {
    if (r.theta) std::cout << "  th = " << print_prod(theta_product(r.zeta_order)) << "\n";
    for (const auto& p : r.products) std::cout << "  " << p.id << " = " << print_prod(p.prod) << "\n";
}

int cmd_reduce(const CliConfig& c) {
    const ParsedInput in = parse_input(read_input(c));
    const RpeResult r = reduce(in.ast, go_config(c));
    RawEvaluator lit(in.raw);
    if (auto n = oracle_mismatch([&](long m) { return lit.eval(m); }, r, std::max(1L, c.oracle_check))) {
        std::cerr << "oracle mismatch at n = " << *n << "\n";
        return 4;
    }
    if (c.json) {
        std::cout << to_json(r).dump(2) << "\n";
        return 0;
    }
    std::cout << print(r.output) << "\n";
    std::cout << "valid for n >= " << r.delta << "\n";
    std::cout << "field: Q(zeta_" << r.field << ")\n";
    if (r.zeta_order) std::cout << "root of unity order: " << r.zeta_order << "\n";
    std::cout << "products:\n";
    print_products(r);
    return 0;
}

int cmd_zerotest(const CliConfig& c) {
    const ParsedInput in = parse_input(read_input(c));
    const RpeResult r = reduce(in.ast, go_config(c));
    const bool zero = r.element.is_zero();
    if (zero && c.oracle_check > 0) {
        RawEvaluator lit(in.raw);
        for (long n = r.delta; n <= r.delta + c.oracle_check; ++n)
            if (!lit.eval(n).is_zero()) {
                std::cerr << "oracle mismatch at n = " << n << "\n";
                return 4;
            }
    }
    if (c.json) {
        std::cout << nlohmann::json{{"zero", zero}, {"delta", r.delta}}.dump(2) << "\n";
        return 0;
    }
    if (zero) std::cout << "ZERO for all n >= " << r.delta << "\n";
    else std::cout << "NONZERO\n";
    return 0;
}

int cmd_eval(const CliConfig& c) {
    const ParsedInput in = parse_input(read_input(c));
    RawEvaluator lit(in.raw);
    nlohmann::json arr = nlohmann::json::array();
    for (long n = c.from; n <= c.to; ++n) {
        const std::string v = lit.eval(n).str();
        if (c.json) arr.push_back({{"n", n}, {"value", v}});
        else std::cout << v << "\n";
    }
    if (c.json) std::cout << arr.dump(2) << "\n";
    return 0;
}

int cmd_indep(const CliConfig& c) {
    const ParsedInput in = parse_input(read_input(c));
    const RpeResult r = reduce(in.ast, go_config(c));
    const StructuralCheck sc = structural_check(r, go_config(c));
    const IndependenceReport rep = independence_report(r, c.n_max, c.exp_bound);
    if (c.json) {
        std::cout << nlohmann::json{{"independent", rep.independent},
                                    {"relation", rep.relation},
                                    {"message", rep.message},
                                    {"shift_coprime", sc.hyper_shift_coprime},
                                    {"geometric_relation_free", sc.geo_relation_free}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    std::cout << "products:\n";
    print_products(r);
    std::cout << "hypergeometric bases shift-coprime: " << (sc.hyper_shift_coprime ? "yes" : "no") << "\n";
    std::cout << "geometric bases relation-free: " << (sc.geo_relation_free ? "yes" : "no") << "\n";
    std::cout << rep.message << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reduction of nested hypergeometric product expressions"};
    app.require_subcommand(1);
    CliConfig c;
    auto common = [&](CLI::App* s) {
        s->add_option("input", c.input, "expression text");
        s->add_option("-f,--file", c.file, "read the expression from a file");
        s->add_flag("--json", c.json, "json output");
        s->add_option("--oracle-check", c.oracle_check, "number of n checked against literal evaluation")
            ->check(CLI::NonNegativeNumber);
        s->add_option("--max-relation-exponent", c.max_relation_exponent, "exponent bound of the relation search")
            ->check(CLI::PositiveNumber);
        s->add_option("--precision", c.precision, "initial precision in bits")->check(CLI::Range(64L, 1L << 20));
    };
    auto* red = app.add_subcommand("reduce", "rewrite over algebraically independent products");
    auto* zt = app.add_subcommand("zerotest", "decide whether the expression vanishes");
    auto* ev = app.add_subcommand("eval", "evaluate the expression literally");
    auto* ind = app.add_subcommand("indep", "check the output products for multiplicative relations");
    for (auto* s : {red, zt, ev, ind}) common(s);
    ev->add_option("--from", c.from, "first n");
    ev->add_option("--to", c.to, "last n");
    ind->add_option("--n-max", c.n_max, "largest n sampled");
    ind->add_option("--exp-bound", c.exp_bound, "exponent bound of the brute-force search");
    CLI11_PARSE(app, argc, argv);
    try {
        if (red->parsed()) return cmd_reduce(c);
        if (zt->parsed()) return cmd_zerotest(c);
        if (ev->parsed()) return cmd_eval(c);
        return cmd_indep(c);
    } catch (const SyntaxError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const InvalidLowerBound& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const RelationSearchExhausted& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
