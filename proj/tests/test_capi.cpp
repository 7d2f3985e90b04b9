#include <string>

#include "doctest.h"
#include "wmclab.h"

namespace {

struct scoped_string {
    char* p = nullptr;
    ~scoped_string() { wmclab_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

const char* kH1Spec = "k=1\ncnf: 0 1\n";
const char* kQwSpec = "k=3\ncnf: 0 2 | 0 3 | 1 3\n";

} // namespace

TEST_CASE("version and error reporting") {
    CHECK(std::string(wmclab_version()) == "1.0.0");

    wmclab_query* q = nullptr;
    CHECK(wmclab_query_parse("nonsense", &q) == WMCLAB_PARSE_ERROR);
    CHECK(q == nullptr);
    CHECK(std::string(wmclab_last_error()).find("ParseError") != std::string::npos);

    CHECK(wmclab_query_parse(nullptr, &q) == WMCLAB_UNSUPPORTED);
    CHECK(std::string(wmclab_last_error()).find("null") != std::string::npos);
}

TEST_CASE("query accessors and grounding round-trip") {
    wmclab_query* q = nullptr;
    REQUIRE(wmclab_query_parse(kH1Spec, &q) == WMCLAB_OK);
    CHECK(wmclab_query_k(q) == 1);
    CHECK(wmclab_query_arity(q) == 2);
    CHECK(wmclab_query_default_n(q) == -1);
    CHECK(wmclab_query_is_dichotomy(q) == 0);

    scoped_string dnf_text;
    REQUIRE(wmclab_query_ground(q, 1, &dnf_text.p) == WMCLAB_OK);

    wmclab_dnf* f = nullptr;
    REQUIRE(wmclab_dnf_parse(dnf_text.p, &f) == WMCLAB_OK);
    wmclab_weights* w = nullptr;
    REQUIRE(wmclab_weights_parse("default 1/2\n", &w) == WMCLAB_OK);
    scoped_string p;
    REQUIRE(wmclab_oracle_dnf(f, w, &p.p) == WMCLAB_OK);
    CHECK(p.str() == "3/8");

    CHECK(wmclab_query_ground(q, 0, &dnf_text.p) == WMCLAB_EMPTY_DOMAIN);

    wmclab_weights_free(w);
    wmclab_dnf_free(f);
    wmclab_query_free(q);
}

TEST_CASE("compilation, validation, printing, and counting agree") {
    wmclab_query* q = nullptr;
    REQUIRE(wmclab_query_parse(kH1Spec, &q) == WMCLAB_OK);
    wmclab_weights* w = nullptr;
    REQUIRE(wmclab_weights_parse("default 1/2\nR(1) 1/3\n", &w) == WMCLAB_OK);

    wmclab_compile_stats stats{};
    wmclab_diagram* d = nullptr;
    REQUIRE(wmclab_compile_query(q, 2, "max-occurrence", "direct-dnf", 0, &d, &stats) ==
            WMCLAB_OK);
    CHECK(wmclab_diagram_size(d) >= 1);
    CHECK(stats.nodes_created >= 1);

    scoped_string cls;
    REQUIRE(wmclab_diagram_validate(d, &cls.p) == WMCLAB_OK);
    const std::string c = cls.str();
    CHECK((c == "FBDD" || c == "dec-DNNF" || c == "DLDD"));

    scoped_string compiled_p, oracle_p;
    REQUIRE(wmclab_diagram_wmc(d, w, &compiled_p.p) == WMCLAB_OK);
    REQUIRE(wmclab_oracle_query(q, 2, w, &oracle_p.p) == WMCLAB_OK);
    CHECK(compiled_p.str() == oracle_p.str());

    scoped_string mdd, dot;
    REQUIRE(wmclab_diagram_print(d, "mdd", &mdd.p) == WMCLAB_OK);
    REQUIRE(wmclab_diagram_print(d, "dot", &dot.p) == WMCLAB_OK);
    CHECK(dot.str().find("digraph") != std::string::npos);
    char* bad = nullptr;
    CHECK(wmclab_diagram_print(d, "svg", &bad) == WMCLAB_UNSUPPORTED);

    wmclab_diagram* back = nullptr;
    REQUIRE(wmclab_diagram_parse(mdd.p, &back) == WMCLAB_OK);
    CHECK(wmclab_diagram_size(back) == wmclab_diagram_size(d));
    scoped_string back_p;
    REQUIRE(wmclab_diagram_wmc(back, w, &back_p.p) == WMCLAB_OK);
    CHECK(back_p.str() == compiled_p.str());

    wmclab_diagram_free(back);
    wmclab_diagram_free(d);
    wmclab_weights_free(w);
    wmclab_query_free(q);
}

TEST_CASE("budget exhaustion reports partial statistics") {
    wmclab_query* q = nullptr;
    REQUIRE(wmclab_query_parse(kH1Spec, &q) == WMCLAB_OK);
    wmclab_compile_stats stats{};
    wmclab_diagram* d = nullptr;
    CHECK(wmclab_compile_query(q, 3, nullptr, nullptr, 4, &d, &stats) ==
          WMCLAB_BUDGET_EXHAUSTED);
    CHECK(d == nullptr);
    CHECK(stats.nodes_created >= 1);
    wmclab_query_free(q);
}

TEST_CASE("unit-rule rewrite through the C interface") {
    wmclab_dnf* phi = nullptr;
    REQUIRE(wmclab_dnf_parse("X\nY Z\n", &phi) == WMCLAB_OK);
    wmclab_diagram* compiled = nullptr;
    REQUIRE(wmclab_compile_dnf(phi, "first-unset", nullptr, 0, &compiled, nullptr) == WMCLAB_OK);
    wmclab_diagram* fbdd = nullptr;
    REQUIRE(wmclab_dldd_to_fbdd(compiled, 0, &fbdd) == WMCLAB_OK);

    wmclab_diagram* rewritten = nullptr;
    REQUIRE(wmclab_to_unit_rule(fbdd, phi, &rewritten) == WMCLAB_OK);
    int follows = 0;
    REQUIRE(wmclab_follows_unit_rule(rewritten, phi, &follows) == WMCLAB_OK);
    CHECK(follows == 1);

    wmclab_diagram_free(rewritten);
    wmclab_diagram_free(fbdd);
    wmclab_diagram_free(compiled);
    wmclab_dnf_free(phi);
}

TEST_CASE("transversal report lists every surviving pair") {
    scoped_string csv;
    REQUIRE(wmclab_transversals(1, 2, "", &csv.p) == WMCLAB_OK);
    const std::string text = csv.str();
    CHECK(text.find("# max-independent 2") != std::string::npos);
    CHECK(text.find("i,j\n") != std::string::npos);
    CHECK(text.find("1,1\n") != std::string::npos);
    CHECK(text.find("2,2\n") != std::string::npos);
}

TEST_CASE("lifted evaluation matches the oracle and rejects unsafe queries") {
    wmclab_query* qw = nullptr;
    REQUIRE(wmclab_query_parse(kQwSpec, &qw) == WMCLAB_OK);
    wmclab_weights* w = nullptr;
    REQUIRE(wmclab_weights_parse("default 2/5\n", &w) == WMCLAB_OK);

    scoped_string p, dec, terms;
    uint64_t nodes = 0;
    REQUIRE(wmclab_lifted(qw, 1, w, &p.p, &dec.p, &terms.p, &nodes) == WMCLAB_OK);
    scoped_string oracle_p;
    REQUIRE(wmclab_oracle_query(qw, 1, w, &oracle_p.p) == WMCLAB_OK);
    CHECK(p.str() == oracle_p.str());
    CHECK_FALSE(dec.str().empty());
    CHECK(nodes >= 1);
    CHECK(terms.str().rfind("element,mobius,probability\n", 0) == 0);
    int lines = 0;
    for (char ch : terms.str()) lines += ch == '\n';
    CHECK(lines == 6); // header plus five contributing terms

    wmclab_query* h1 = nullptr;
    REQUIRE(wmclab_query_parse(kH1Spec, &h1) == WMCLAB_OK);
    CHECK(wmclab_lifted(h1, 2, w, &p.p, nullptr, nullptr, nullptr) == WMCLAB_UNSAFE_QUERY);

    wmclab_query_free(h1);
    wmclab_weights_free(w);
    wmclab_query_free(qw);
}

TEST_CASE("dichotomy classification and construction") {
    wmclab_query* hard = nullptr;
    REQUIRE(wmclab_query_parse("k=3\narity=9\ncnf: 0 1 | 1 7 | 2 3\n", &hard) == WMCLAB_OK);
    CHECK(wmclab_query_is_dichotomy(hard) == 1);
    int is_hard = 0, witness = 0;
    REQUIRE(wmclab_classify(hard, &is_hard, &witness) == WMCLAB_OK);
    CHECK(is_hard == 1);
    CHECK(witness == -1);
    wmclab_diagram* d = nullptr;
    CHECK(wmclab_dichotomy_build(hard, 1, &d) == WMCLAB_REFUSED);

    wmclab_query* easy = nullptr;
    REQUIRE(wmclab_query_parse("k=1\narity=5\ncnf: 0 4 | 2 1\n", &easy) == WMCLAB_OK);
    REQUIRE(wmclab_classify(easy, &is_hard, &witness) == WMCLAB_OK);
    CHECK(is_hard == 0);
    CHECK(witness == 0);
    REQUIRE(wmclab_dichotomy_build(easy, 1, &d) == WMCLAB_OK);
    CHECK(wmclab_diagram_size(d) >= 1);
    scoped_string cls;
    REQUIRE(wmclab_diagram_validate(d, &cls.p) == WMCLAB_OK);
    CHECK(cls.str() == "FBDD");

    wmclab_diagram_free(d);
    wmclab_query_free(easy);
    wmclab_query_free(hard);
}

TEST_CASE("experiment rows flow through the C interface") {
    wmclab_query* qw = nullptr;
    REQUIRE(wmclab_query_parse(kQwSpec, &qw) == WMCLAB_OK);
    int ns[] = {1};
    scoped_string csv;
    REQUIRE(wmclab_experiment(qw, ns, 1, nullptr, nullptr, 0, nullptr, -1, &csv.p) ==
            WMCLAB_OK);
    const std::string text = csv.str();
    CHECK(text.find(",grounded,") != std::string::npos);
    CHECK(text.find(",lifted,") != std::string::npos);
    CHECK(text.find(",oracle,") != std::string::npos);

    scoped_string empty_csv;
    REQUIRE(wmclab_experiment(qw, nullptr, 0, nullptr, nullptr, 0, nullptr, -1, &empty_csv.p) ==
            WMCLAB_OK);
    CHECK(empty_csv.str() ==
          "query-id,k,n,mode,nodes,cache-hits,probability,elapsed-ms,heuristic,budget-hit\n");
    wmclab_query_free(qw);
}
