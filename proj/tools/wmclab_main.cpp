#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wmclab.h"

namespace {

[[noreturn]] void die(const std::string& message, int code) {
    std::fprintf(stderr, "error: %s\n", message.c_str());
    std::exit(code);
}

void check(wmclab_status st) {
    if (st != WMCLAB_OK) die(wmclab_last_error(), 2);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) die("cannot read '" + path + "'", 2);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(out_path);
    if (!out) die("cannot write '" + out_path + "'", 2);
    out << text;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// "4" | "1,2,5" | "2..8"
std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    if (text.empty()) return out;
    auto range = text.find("..");
    try {
        if (range != std::string::npos) {
            int lo = std::stoi(text.substr(0, range));
            int hi = std::stoi(text.substr(range + 2));
            for (int n = lo; n <= hi; ++n) out.push_back(n);
        } else {
            std::istringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
        }
    } catch (const std::exception&) {
        die("cannot parse domain list '" + text + "'", 1);
    }
    return out;
}

struct owned_string {
    char* p = nullptr;
    ~owned_string() { wmclab_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

/// Shared inputs: a query from a spec file or from --k (plain chain query),
/// a domain size, and a weight map (uniform 1/2 by default).
struct common_opts {
    std::string input;
    int k = 0;
    int n = 0;
    std::string weights_path;
    std::string heuristic;
    std::string negation_mode;
    std::uint64_t budget = 0;
    std::string format = "mdd";
    std::string out_path;
    std::string n_list;
    std::string assign_path;
    int oracle_cap = -1;
};

wmclab_query* make_query(const common_opts& o) {
    std::string text;
    if (!o.input.empty()) {
        text = read_file(o.input);
    } else if (o.k >= 1) {
        text = "k=" + std::to_string(o.k) + "\ncnf:";
        for (int a = 0; a <= o.k; ++a) text += ' ' + std::to_string(a);
        text += '\n';
    } else {
        die("need a query spec file or --k", 1);
    }
    wmclab_query* q = nullptr;
    check(wmclab_query_parse(text.c_str(), &q));
    return q;
}

int domain_size(const common_opts& o, const wmclab_query* q) {
    if (o.n >= 1) return o.n;
    int d = wmclab_query_default_n(q);
    if (d >= 1) return d;
    die("need --n (the spec has no default domain size)", 1);
}

wmclab_weights* make_weights(const common_opts& o) {
    std::string text = o.weights_path.empty() ? "default 1/2\n" : read_file(o.weights_path);
    wmclab_weights* w = nullptr;
    check(wmclab_weights_parse(text.c_str(), &w));
    return w;
}

wmclab_diagram* load_diagram(const std::string& path) {
    wmclab_diagram* d = nullptr;
    check(wmclab_diagram_parse(read_file(path).c_str(), &d));
    return d;
}

void emit_diagram(const wmclab_diagram* d, const common_opts& o) {
    if (o.out_path.empty()) return;
    owned_string text;
    check(wmclab_diagram_print(d, o.format.c_str(), &text.p));
    write_output(text.str(), o.out_path);
}

void cmd_ground(const common_opts& o) {
    wmclab_query* q = make_query(o);
    owned_string dnf;
    check(wmclab_query_ground(q, domain_size(o, q), &dnf.p));
    write_output(dnf.str(), o.out_path);
    wmclab_query_free(q);
}

void cmd_compile(const common_opts& o) {
    wmclab_compile_stats stats{};
    wmclab_diagram* d = nullptr;
    if (!o.input.empty() && ends_with(o.input, ".dnf")) {
        wmclab_dnf* f = nullptr;
        check(wmclab_dnf_parse(read_file(o.input).c_str(), &f));
        check(wmclab_compile_dnf(f, o.heuristic.c_str(), o.negation_mode.c_str(), o.budget, &d,
                                 &stats));
        wmclab_dnf_free(f);
    } else {
        wmclab_query* q = make_query(o);
        check(wmclab_compile_query(q, domain_size(o, q), o.heuristic.c_str(),
                                   o.negation_mode.c_str(), o.budget, &d, &stats));
        wmclab_query_free(q);
    }
    std::printf("nodes = %llu\n", static_cast<unsigned long long>(wmclab_diagram_size(d)));
    std::printf("cache-hits = %llu\n", static_cast<unsigned long long>(stats.cache_hits));
    if (!o.weights_path.empty()) {
        wmclab_weights* w = make_weights(o);
        owned_string p;
        check(wmclab_diagram_wmc(d, w, &p.p));
        std::printf("p = %s\n", p.str().c_str());
        wmclab_weights_free(w);
    }
    emit_diagram(d, o);
    wmclab_diagram_free(d);
}

void cmd_convert(const common_opts& o) {
    wmclab_diagram* d = load_diagram(o.input);
    wmclab_diagram* f = nullptr;
    check(wmclab_dldd_to_fbdd(d, o.budget, &f));
    std::printf("nodes-in = %llu\n", static_cast<unsigned long long>(wmclab_diagram_size(d)));
    std::printf("nodes-out = %llu\n", static_cast<unsigned long long>(wmclab_diagram_size(f)));
    emit_diagram(f, o);
    wmclab_diagram_free(f);
    wmclab_diagram_free(d);
}

void cmd_unitrule(const common_opts& o, const std::string& dnf_path) {
    wmclab_diagram* d = load_diagram(o.input);
    wmclab_dnf* phi = nullptr;
    check(wmclab_dnf_parse(read_file(dnf_path).c_str(), &phi));
    int follows = 0;
    check(wmclab_follows_unit_rule(d, phi, &follows));
    std::printf("follows = %s\n", follows ? "yes" : "no");
    wmclab_diagram* rewritten = nullptr;
    check(wmclab_to_unit_rule(d, phi, &rewritten));
    std::printf("nodes = %llu\n", static_cast<unsigned long long>(wmclab_diagram_size(rewritten)));
    emit_diagram(rewritten, o);
    wmclab_diagram_free(rewritten);
    wmclab_dnf_free(phi);
    wmclab_diagram_free(d);
}

void cmd_transversals(const common_opts& o) {
    if (o.k < 1 || o.n < 1) die("need --k and --n", 1);
    std::string assign = o.assign_path.empty() ? "" : read_file(o.assign_path);
    owned_string csv;
    check(wmclab_transversals(o.k, o.n, assign.c_str(), &csv.p));
    write_output(csv.str(), o.out_path);
}

void cmd_lifted(const common_opts& o) {
    wmclab_query* q = make_query(o);
    wmclab_weights* w = make_weights(o);
    owned_string p, dec, terms;
    check(wmclab_lifted(q, domain_size(o, q), w, &p.p, &dec.p, &terms.p, nullptr));
    std::printf("p = %s\n", p.str().c_str());
    std::printf("p ~= %s\n", dec.str().c_str());
    write_output(terms.str(), o.out_path);
    wmclab_weights_free(w);
    wmclab_query_free(q);
}

void cmd_oracle(const common_opts& o) {
    wmclab_weights* w = make_weights(o);
    owned_string p;
    if (!o.input.empty() && ends_with(o.input, ".dnf")) {
        wmclab_dnf* f = nullptr;
        check(wmclab_dnf_parse(read_file(o.input).c_str(), &f));
        check(wmclab_oracle_dnf(f, w, &p.p));
        wmclab_dnf_free(f);
    } else {
        wmclab_query* q = make_query(o);
        check(wmclab_oracle_query(q, domain_size(o, q), w, &p.p));
        wmclab_query_free(q);
    }
    std::printf("p = %s\n", p.str().c_str());
    wmclab_weights_free(w);
}

void cmd_classify(const common_opts& o) {
    wmclab_query* q = make_query(o);
    int hard = 0, witness = -1;
    check(wmclab_classify(q, &hard, &witness));
    if (hard)
        std::printf("hard\n");
    else
        std::printf("easy s=%d\n", witness);
    wmclab_query_free(q);
}

void cmd_dicho(const common_opts& o) {
    wmclab_query* q = make_query(o);
    wmclab_diagram* d = nullptr;
    check(wmclab_dichotomy_build(q, domain_size(o, q), &d));
    std::printf("nodes = %llu\n", static_cast<unsigned long long>(wmclab_diagram_size(d)));
    emit_diagram(d, o);
    wmclab_diagram_free(d);
    wmclab_query_free(q);
}

void cmd_experiment(const common_opts& o) {
    wmclab_query* q = make_query(o);
    std::vector<int> ns = parse_n_list(o.n_list);
    if (ns.empty() && o.n >= 1) ns.push_back(o.n);
    wmclab_weights* w = o.weights_path.empty() ? nullptr : make_weights(o);
    owned_string csv;
    check(wmclab_experiment(q, ns.data(), static_cast<int>(ns.size()), o.heuristic.c_str(),
                            o.negation_mode.c_str(), o.budget, w, o.oracle_cap, &csv.p));
    write_output(csv.str(), o.out_path);
    if (w) wmclab_weights_free(w);
    wmclab_query_free(q);
}

void cmd_validate(const common_opts& o) {
    wmclab_diagram* d = load_diagram(o.input);
    owned_string cls;
    check(wmclab_diagram_validate(d, &cls.p));
    std::printf("%s\n", cls.str().c_str());
    wmclab_diagram_free(d);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted model counting laboratory"};
    app.require_subcommand(1);
    common_opts o;
    std::string unitrule_dnf;

    auto add_query_opts = [&](CLI::App* sub, bool with_n = true) {
        sub->add_option("spec", o.input, "query spec file");
        sub->add_option("--k", o.k, "chain length for a plain chain query");
        if (with_n) sub->add_option("--n", o.n, "domain size");
    };
    auto add_compile_opts = [&](CLI::App* sub) {
        sub->add_option("--heuristic", o.heuristic, "first-unset | max-occurrence");
        sub->add_option("--negation-mode", o.negation_mode, "direct-dnf | negate-to-cnf");
        sub->add_option("--budget", o.budget, "node budget (0 = default)");
    };
    auto add_out_opts = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "mdd | dot | csv")
            ->check(CLI::IsMember({"mdd", "dot", "csv"}));
        sub->add_option("--out", o.out_path, "output file (stdout otherwise)");
    };
    auto add_weights_opt = [&](CLI::App* sub) {
        sub->add_option("--weights", o.weights_path, "weight file (uniform 1/2 otherwise)");
    };

    CLI::App* ground = app.add_subcommand("ground", "print the grounded lineage DNF");
    add_query_opts(ground);
    ground->add_option("--out", o.out_path, "output file");

    CLI::App* compile = app.add_subcommand("compile", "compile a lineage to a decision diagram");
    add_query_opts(compile);
    add_compile_opts(compile);
    add_weights_opt(compile);
    add_out_opts(compile);

    CLI::App* convert = app.add_subcommand("convert", "convert a DLDD to an FBDD");
    convert->add_option("diagram", o.input, "input .mdd file")->required();
    convert->add_option("--budget", o.budget, "output node budget (0 = default)");
    add_out_opts(convert);

    CLI::App* unitrule = app.add_subcommand("unitrule", "rewrite an FBDD into unit-rule form");
    unitrule->add_option("diagram", o.input, "input .mdd file")->required();
    unitrule->add_option("dnf", unitrule_dnf, "the formula the diagram computes")->required();
    add_out_opts(unitrule);

    CLI::App* transversals =
        app.add_subcommand("transversals", "list surviving chain pairs under an assignment");
    transversals->add_option("--k", o.k, "chain length")->required();
    transversals->add_option("--n", o.n, "domain size")->required();
    transversals->add_option("--assign", o.assign_path, "partial assignment file");
    transversals->add_option("--out", o.out_path, "output file");

    CLI::App* lifted = app.add_subcommand("lifted", "evaluate a safe query via its clause lattice");
    add_query_opts(lifted);
    add_weights_opt(lifted);
    lifted->add_option("--out", o.out_path, "term table output file");

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force reference count");
    add_query_opts(oracle);
    add_weights_opt(oracle);

    CLI::App* classify = app.add_subcommand("classify", "hard/easy classification");
    add_query_opts(classify, false);

    CLI::App* dicho = app.add_subcommand("dicho", "build the layered FBDD of an easy query");
    add_query_opts(dicho);
    add_out_opts(dicho);

    CLI::App* experiment = app.add_subcommand("experiment", "separation experiment CSV");
    experiment->add_option("spec", o.input, "query spec file");
    experiment->add_option("--k", o.k, "chain length for a plain chain query");
    experiment->add_option("--n", o.n_list, "domain sizes: 4 | 1,2,5 | 2..8");
    add_compile_opts(experiment);
    add_weights_opt(experiment);
    experiment->add_option("--oracle-cap", o.oracle_cap, "variable cap for oracle rows");
    experiment->add_option("--out", o.out_path, "output file");

    CLI::App* validate = app.add_subcommand("validate", "report the diagram class");
    validate->add_option("diagram", o.input, "input .mdd file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (ground->parsed()) cmd_ground(o);
    if (compile->parsed()) cmd_compile(o);
    if (convert->parsed()) cmd_convert(o);
    if (unitrule->parsed()) cmd_unitrule(o, unitrule_dnf);
    if (transversals->parsed()) cmd_transversals(o);
    if (lifted->parsed()) cmd_lifted(o);
    if (oracle->parsed()) cmd_oracle(o);
    if (classify->parsed()) cmd_classify(o);
    if (dicho->parsed()) cmd_dicho(o);
    if (experiment->parsed()) cmd_experiment(o);
    if (validate->parsed()) cmd_validate(o);
    return 0;
}
