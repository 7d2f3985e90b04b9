#include "wmclab.h"

#include <cstring>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "wmclab/diagram_io.hpp"
#include "wmclab/errors.hpp"
#include "wmclab/experiment.hpp"
#include "wmclab/lifted.hpp"
#include "wmclab/oracle.hpp"
#include "wmclab/rational.hpp"
#include "wmclab/transforms.hpp"

struct wmclab_query {
    wmclab::QuerySpec v;
};
struct wmclab_dnf {
    wmclab::MonotoneDnf v;
};
struct wmclab_diagram {
    wmclab::Diagram v;
};
struct wmclab_weights {
    wmclab::WeightMap v;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class Fn>
wmclab_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return WMCLAB_OK;
    } catch (const wmclab::error& e) {
        g_last_error = e.what();
        return static_cast<wmclab_status>(static_cast<int>(e.code()));
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return WMCLAB_INTERNAL_SAFETY_VIOLATION;
    }
}

wmclab_status null_argument() {
    g_last_error = "unsupported: null argument";
    return WMCLAB_UNSUPPORTED;
}

wmclab::CompileConfig make_config(const char* heuristic, const char* negation_mode,
                                  uint64_t budget) {
    wmclab::CompileConfig cfg;
    if (heuristic && *heuristic) cfg.heuristic = wmclab::parse_heuristic(heuristic);
    if (negation_mode && *negation_mode)
        cfg.negation_mode = wmclab::parse_negation_mode(negation_mode);
    if (budget != 0) cfg.node_budget = budget;
    return cfg;
}

void fill_stats(wmclab_compile_stats* out, const wmclab::CompileStats& s) {
    if (!out) return;
    out->nodes_created = s.nodes_created;
    out->cache_hits = s.cache_hits;
    out->cache_misses = s.cache_misses;
    out->decisions = s.decisions;
    out->component_splits = s.component_splits;
}

template <class Input>
void compile_impl(const Input& input, const char* heuristic, const char* negation_mode,
                  uint64_t budget, wmclab_diagram** out, wmclab_compile_stats* stats) {
    try {
        wmclab::CompileResult r =
            wmclab::compile(input, make_config(heuristic, negation_mode, budget));
        fill_stats(stats, r.stats);
        *out = new wmclab_diagram{std::move(r.diagram)};
    } catch (const wmclab::budget_error& e) {
        fill_stats(stats, e.partial());
        throw;
    }
}

} // namespace

extern "C" {

const char* wmclab_version(void) { return "1.0.0"; }

const char* wmclab_last_error(void) { return g_last_error.c_str(); }

void wmclab_string_free(char* s) { delete[] s; }

wmclab_status wmclab_query_parse(const char* text, wmclab_query** out) {
    if (!text || !out) return null_argument();
    return guarded([&] { *out = new wmclab_query{wmclab::QuerySpec::parse(text)}; });
}

void wmclab_query_free(wmclab_query* q) { delete q; }

int wmclab_query_k(const wmclab_query* q) { return q ? q->v.k() : -1; }

int wmclab_query_arity(const wmclab_query* q) { return q ? q->v.combinator().arity() : -1; }

int wmclab_query_default_n(const wmclab_query* q) {
    return q && q->v.default_n() ? *q->v.default_n() : -1;
}

int wmclab_query_is_dichotomy(const wmclab_query* q) {
    return q && q->v.is_dichotomy() ? 1 : 0;
}

wmclab_status wmclab_dnf_parse(const char* text, wmclab_dnf** out) {
    if (!text || !out) return null_argument();
    return guarded([&] { *out = new wmclab_dnf{wmclab::MonotoneDnf::parse(text)}; });
}

void wmclab_dnf_free(wmclab_dnf* f) { delete f; }

wmclab_status wmclab_query_ground(const wmclab_query* q, int n, char** out_dnf) {
    if (!q || !out_dnf) return null_argument();
    return guarded(
        [&] { *out_dnf = dup_string(wmclab::flatten_composite(q->v.lineage(n)).str()); });
}

wmclab_status wmclab_weights_parse(const char* text, wmclab_weights** out) {
    if (!text || !out) return null_argument();
    return guarded([&] { *out = new wmclab_weights{wmclab::WeightMap::parse(text)}; });
}

void wmclab_weights_free(wmclab_weights* w) { delete w; }

wmclab_status wmclab_compile_query(const wmclab_query* q, int n, const char* heuristic,
                                   const char* negation_mode, uint64_t budget,
                                   wmclab_diagram** out, wmclab_compile_stats* stats) {
    if (!q || !out) return null_argument();
    return guarded(
        [&] { compile_impl(q->v.lineage(n), heuristic, negation_mode, budget, out, stats); });
}

wmclab_status wmclab_compile_dnf(const wmclab_dnf* f, const char* heuristic,
                                 const char* negation_mode, uint64_t budget,
                                 wmclab_diagram** out, wmclab_compile_stats* stats) {
    if (!f || !out) return null_argument();
    return guarded([&] { compile_impl(f->v, heuristic, negation_mode, budget, out, stats); });
}

void wmclab_diagram_free(wmclab_diagram* d) { delete d; }

uint64_t wmclab_diagram_size(const wmclab_diagram* d) { return d ? d->v.size() : 0; }

wmclab_status wmclab_diagram_validate(const wmclab_diagram* d, char** out_class) {
    if (!d || !out_class) return null_argument();
    return guarded([&] {
        *out_class = dup_string(wmclab::diagram_class_name(wmclab::validate(d->v).diagram_class));
    });
}

wmclab_status wmclab_diagram_print(const wmclab_diagram* d, const char* format, char** out) {
    if (!d || !format || !out) return null_argument();
    return guarded([&] {
        std::string fmt = format;
        if (fmt == "mdd")
            *out = dup_string(wmclab::print_mdd(d->v));
        else if (fmt == "dot")
            *out = dup_string(wmclab::print_dot(d->v));
        else
            wmclab::raise(wmclab::errc::unsupported, "unknown diagram format '" + fmt + "'");
    });
}

wmclab_status wmclab_diagram_parse(const char* mdd_text, wmclab_diagram** out) {
    if (!mdd_text || !out) return null_argument();
    return guarded([&] { *out = new wmclab_diagram{wmclab::parse_mdd(mdd_text)}; });
}

wmclab_status wmclab_diagram_wmc(const wmclab_diagram* d, const wmclab_weights* w,
                                 char** out_probability) {
    if (!d || !w || !out_probability) return null_argument();
    return guarded([&] {
        *out_probability = dup_string(wmclab::rational_string(wmclab::wmc(d->v, w->v).at(0)));
    });
}

wmclab_status wmclab_follows_unit_rule(const wmclab_diagram* d, const wmclab_dnf* phi,
                                       int* out_follows) {
    if (!d || !phi || !out_follows) return null_argument();
    return guarded([&] { *out_follows = wmclab::follows_unit_rule(d->v, phi->v) ? 1 : 0; });
}

wmclab_status wmclab_to_unit_rule(const wmclab_diagram* d, const wmclab_dnf* phi,
                                  wmclab_diagram** out) {
    if (!d || !phi || !out) return null_argument();
    return guarded([&] { *out = new wmclab_diagram{wmclab::to_unit_rule(d->v, phi->v)}; });
}

wmclab_status wmclab_dldd_to_fbdd(const wmclab_diagram* d, uint64_t budget,
                                  wmclab_diagram** out) {
    if (!d || !out) return null_argument();
    return guarded([&] {
        *out = new wmclab_diagram{
            budget ? wmclab::dldd_to_fbdd(d->v, budget) : wmclab::dldd_to_fbdd(d->v)};
    });
}

wmclab_status wmclab_transversals(int k, int n, const char* assignment_text, char** out_csv) {
    if (!out_csv) return null_argument();
    return guarded([&] {
        wmclab::Assignment theta =
            assignment_text ? wmclab::Assignment::parse(assignment_text) : wmclab::Assignment{};
        wmclab::TransversalSet ts = wmclab::find_transversals(theta, k, n);
        std::string csv = "# max-independent " + std::to_string(ts.max_independent) + "\n";
        csv += "# cover";
        for (const wmclab::VarId& v : ts.cover) csv += ' ' + v.str();
        csv += "\ni,j\n";
        for (const auto& [i, j] : ts.pairs)
            csv += std::to_string(i) + ',' + std::to_string(j) + '\n';
        *out_csv = dup_string(csv);
    });
}

wmclab_status wmclab_oracle_dnf(const wmclab_dnf* f, const wmclab_weights* w,
                                char** out_probability) {
    if (!f || !w || !out_probability) return null_argument();
    return guarded([&] {
        *out_probability = dup_string(wmclab::rational_string(wmclab::brute_force_wmc(f->v, w->v)));
    });
}

wmclab_status wmclab_oracle_query(const wmclab_query* q, int n, const wmclab_weights* w,
                                  char** out_probability) {
    if (!q || !w || !out_probability) return null_argument();
    return guarded([&] {
        *out_probability =
            dup_string(wmclab::rational_string(wmclab::brute_force_wmc(q->v.lineage(n), w->v)));
    });
}

wmclab_status wmclab_lifted(const wmclab_query* q, int n, const wmclab_weights* w,
                            char** out_probability, char** out_decimal, char** out_terms_csv,
                            uint64_t* out_nodes) {
    if (!q || !w) return null_argument();
    return guarded([&] {
        wmclab::LiftedResult r = wmclab::lifted_wmc(q->v.combinator(), q->v.k(), n, w->v);
        if (out_probability) *out_probability = dup_string(wmclab::rational_string(r.probability));
        if (out_decimal) *out_decimal = dup_string(wmclab::rational_decimal(r.probability));
        if (out_terms_csv) {
            std::string csv = "element,mobius,probability\n";
            for (const wmclab::LiftedTerm& t : r.terms) {
                std::string element;
                for (int m : t.members) {
                    if (!element.empty()) element += ' ';
                    element += std::to_string(m);
                }
                csv += element + ',' + std::to_string(t.mobius) + ',' +
                       wmclab::rational_string(t.probability) + '\n';
            }
            *out_terms_csv = dup_string(csv);
        }
        if (out_nodes) *out_nodes = r.obdd_nodes;
    });
}

wmclab_status wmclab_classify(const wmclab_query* q, int* out_hard, int* out_witness) {
    if (!q || !out_hard || !out_witness) return null_argument();
    return guarded([&] {
        wmclab::DichotomyClass c = wmclab::classify_dichotomy(q->v.combinator(), q->v.k());
        *out_hard = c.hard ? 1 : 0;
        *out_witness = c.witness_index;
    });
}

wmclab_status wmclab_dichotomy_build(const wmclab_query* q, int n, wmclab_diagram** out) {
    if (!q || !out) return null_argument();
    return guarded([&] {
        *out = new wmclab_diagram{wmclab::build_dichotomy_fbdd(q->v.combinator(), q->v.k(), n)};
    });
}

wmclab_status wmclab_experiment(const wmclab_query* q, const int* ns, int ns_len,
                                const char* heuristic, const char* negation_mode,
                                uint64_t budget, const wmclab_weights* w, int oracle_cap,
                                char** out_csv) {
    if (!q || !out_csv || (ns_len > 0 && !ns)) return null_argument();
    return guarded([&] {
        wmclab::ExperimentConfig cfg;
        cfg.compile = make_config(heuristic, negation_mode, budget);
        if (w) cfg.weights = w->v;
        if (oracle_cap >= 0) cfg.oracle_cap = oracle_cap;
        std::vector<int> domain_sizes(ns, ns + ns_len);
        *out_csv =
            dup_string(wmclab::experiment_csv(wmclab::run_separation(q->v, domain_sizes, cfg)));
    });
}

} // extern "C"
