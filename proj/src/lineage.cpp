#include "wmclab/lineage.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "wmclab/errors.hpp"

namespace wmclab {

namespace {

void check_kn(int k, int n) {
    if (k < 1) raise(errc::unsupported, "chain length k must be >= 1");
    if (n < 1) raise(errc::empty_domain, "domain size n must be >= 1");
    if (k > 0xffff) raise(errc::too_large, "chain length k too large");
}

} // namespace

MonotoneDnf ground_hk_member(int k, int l, int n) {
    check_kn(k, n);
    if (l < 0 || l > k) raise(errc::unsupported, "member index out of range");
    std::vector<Term> terms;
    terms.reserve(static_cast<std::size_t>(n) * n);
    auto lv = [](int x) { return static_cast<std::uint16_t>(x); };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            Term t;
            if (l == 0)
                t = {VarId::r(i), VarId::s(1, i, j)};
            else if (l == k)
                t = {VarId::s(lv(k), i, j), VarId::t(j)};
            else
                t = {VarId::s(lv(l), i, j), VarId::s(lv(l + 1), i, j)};
            terms.push_back(std::move(t));
        }
    return MonotoneDnf(std::move(terms));
}

std::vector<MonotoneDnf> ground_hk_family(int k, int n) {
    check_kn(k, n);
    std::vector<MonotoneDnf> out;
    out.reserve(static_cast<std::size_t>(k) + 1);
    for (int l = 0; l <= k; ++l) out.push_back(ground_hk_member(k, l, n));
    return out;
}

MonotoneDnf ground_hk(int k, int n) {
    MonotoneDnf out;
    for (const MonotoneDnf& h : ground_hk_family(k, n)) out = MonotoneDnf::disjoin(out, h);
    return out;
}

MonotoneDnf ground_h0(int n) {
    if (n < 1) raise(errc::empty_domain, "domain size n must be >= 1");
    std::vector<Term> terms;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            terms.push_back({VarId::r(i), VarId::s(1, i, j), VarId::t(j)});
    return MonotoneDnf(std::move(terms));
}

MonotoneDnf ground_b_member(int k, int l, int n) {
    check_kn(k, n);
    if (l < 0 || l > k + 1) raise(errc::unsupported, "member index out of range");
    std::vector<Term> terms;
    if (l == 0) {
        for (int i = 1; i <= n; ++i) terms.push_back({VarId::r(i)});
    } else if (l == k + 1) {
        for (int j = 1; j <= n; ++j) terms.push_back({VarId::t(j)});
    } else {
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                terms.push_back({VarId::s(static_cast<std::uint16_t>(l), i, j)});
    }
    return MonotoneDnf(std::move(terms));
}

std::vector<MonotoneDnf> ground_b_family(int k, int n) {
    check_kn(k, n);
    std::vector<MonotoneDnf> out;
    out.reserve(static_cast<std::size_t>(k) + 2);
    for (int l = 0; l <= k + 1; ++l) out.push_back(ground_b_member(k, l, n));
    return out;
}

ArgSlot ArgSlot::formula(MonotoneDnf d) {
    if (d.is_constant()) return constant(d.is_true());
    return {false, false, std::move(d)};
}

CompositeLineage::CompositeLineage(CombinatorFn f, std::vector<MonotoneDnf> args)
    : f_(std::move(f)) {
    if (static_cast<int>(args.size()) != f_.arity())
        raise(errc::unsupported, "argument count does not match combinator arity");
    slots_.reserve(args.size());
    for (MonotoneDnf& a : args) slots_.push_back(ArgSlot::formula(std::move(a)));
}

CompositeLineage::CompositeLineage(CombinatorFn f, std::vector<ArgSlot> slots)
    : f_(std::move(f)), slots_(std::move(slots)) {
    if (static_cast<int>(slots_.size()) != f_.arity())
        raise(errc::unsupported, "slot count does not match combinator arity");
    for (ArgSlot& s : slots_)
        if (!s.fixed && s.dnf.is_constant()) s = ArgSlot::constant(s.dnf.is_true());
}

std::size_t CompositeLineage::live_count() const {
    std::size_t c = 0;
    for (const ArgSlot& s : slots_) c += s.fixed ? 0 : 1;
    return c;
}

CombinatorFn CompositeLineage::residual_combinator() const {
    CombinatorFn f = f_;
    // fix from the highest index down so earlier indices stay valid
    for (int l = f_.arity() - 1; l >= 0; --l)
        if (slots_[static_cast<std::size_t>(l)].fixed)
            f = f.restrict_arg(l, slots_[static_cast<std::size_t>(l)].value);
    return f;
}

std::vector<VarId> CompositeLineage::support() const {
    std::set<VarId> vars;
    for (const ArgSlot& s : slots_)
        if (!s.fixed)
            for (const VarId& v : s.dnf.support()) vars.insert(v);
    return {vars.begin(), vars.end()};
}

bool CompositeLineage::is_constant_function() const {
    return residual_combinator().is_constant();
}

bool CompositeLineage::constant_value() const { return residual_combinator().constant_value(); }

bool CompositeLineage::evaluate(const Assignment& theta) const {
    std::vector<bool> args;
    args.reserve(slots_.size());
    for (const ArgSlot& s : slots_) args.push_back(s.fixed ? s.value : s.dnf.evaluate(theta));
    return f_.eval(args);
}

bool operator==(const CompositeLineage& a, const CompositeLineage& b) {
    if (!(a.f_ == b.f_) || a.slots_.size() != b.slots_.size()) return false;
    for (std::size_t i = 0; i < a.slots_.size(); ++i) {
        const ArgSlot &x = a.slots_[i], &y = b.slots_[i];
        if (x.fixed != y.fixed) return false;
        if (x.fixed ? (x.value != y.value) : !(x.dnf == y.dnf)) return false;
    }
    return true;
}

CompositeLineage restrict_composite(const CompositeLineage& psi, const Assignment& theta) {
    std::vector<ArgSlot> slots;
    slots.reserve(psi.slots().size());
    for (const ArgSlot& s : psi.slots()) {
        if (s.fixed)
            slots.push_back(s);
        else
            slots.push_back(ArgSlot::formula(restrict_dnf(s.dnf, theta)));
    }
    return CompositeLineage(psi.combinator(), std::move(slots));
}

MonotoneDnf flatten_composite(const CompositeLineage& psi, std::size_t term_cap) {
    const CombinatorFn f = psi.residual_combinator();
    if (!f.is_monotone()) raise(errc::not_monotone, "cannot flatten a non-monotone composite");
    if (f.is_constant())
        return f.constant_value() ? MonotoneDnf::truth() : MonotoneDnf::falsity();

    std::vector<const MonotoneDnf*> live;
    for (const ArgSlot& s : psi.slots())
        if (!s.fixed) live.push_back(&s.dnf);

    MonotoneDnf result;
    const std::uint32_t points = std::uint32_t{1} << f.arity();
    for (std::uint32_t m = 0; m < points; ++m) {
        if (!f.eval_index(m)) continue;
        bool minimal = true;
        for (int a = 0; a < f.arity() && minimal; ++a)
            if ((m >> a & 1u) && f.eval_index(m & ~(std::uint32_t{1} << a))) minimal = false;
        if (!minimal) continue;
        std::vector<Term> product{Term{}};
        for (int a = 0; a < f.arity(); ++a) {
            if (!(m >> a & 1u)) continue;
            const std::vector<Term>& factor = live[static_cast<std::size_t>(a)]->terms();
            if (product.size() * factor.size() > term_cap)
                raise(errc::too_large, "flattened lineage exceeds the term cap");
            std::vector<Term> next;
            next.reserve(product.size() * factor.size());
            for (const Term& t : product)
                for (const Term& s : factor) {
                    Term u = t;
                    u.insert(u.end(), s.begin(), s.end());
                    next.push_back(std::move(u));
                }
            product = std::move(next);
        }
        result = MonotoneDnf::disjoin(result, MonotoneDnf(std::move(product)));
    }
    return result;
}

QuerySpec::QuerySpec(CombinatorFn g, int k, std::optional<int> default_n)
    : g_(std::move(g)), k_(k), n_(default_n) {
    if (k_ < 1) raise(errc::unsupported, "query spec needs k >= 1");
    if (g_.arity() != k_ + 1 && g_.arity() != 2 * k_ + 3)
        raise(errc::parse_error, "combinator arity must be k+1 or 2k+3 (dichotomy)");
    if (n_ && *n_ < 1) raise(errc::empty_domain, "default domain size must be >= 1");
}

CompositeLineage QuerySpec::lineage(int n) const {
    std::vector<MonotoneDnf> args = ground_hk_family(k_, n);
    if (is_dichotomy()) {
        std::vector<MonotoneDnf> b = ground_b_family(k_, n);
        args.insert(args.end(), b.begin(), b.end());
    }
    return CompositeLineage(g_, std::move(args));
}

QuerySpec QuerySpec::parse(const std::string& text) {
    std::optional<int> k, n, arity;
    std::optional<std::vector<std::vector<int>>> clauses;
    std::optional<std::string> tt;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        // strip whitespace-only lines
        std::string stripped;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c)) || !stripped.empty()) stripped += c;
        while (!stripped.empty() && std::isspace(static_cast<unsigned char>(stripped.back())))
            stripped.pop_back();
        if (stripped.empty()) continue;

        auto starts = [&](const char* prefix) { return stripped.rfind(prefix, 0) == 0; };
        auto int_value = [&](std::size_t off) {
            try {
                return std::stoi(stripped.substr(off));
            } catch (...) {
                raise(errc::parse_error, "bad number in '" + stripped + "'");
            }
        };
        if (starts("k=")) {
            k = int_value(2);
        } else if (starts("n=")) {
            n = int_value(2);
        } else if (starts("arity=")) {
            arity = int_value(6);
        } else if (starts("cnf:")) {
            std::vector<std::vector<int>> cls;
            std::string body = stripped.substr(4);
            std::size_t pos = 0;
            while (pos <= body.size()) {
                auto bar = body.find('|', pos);
                std::string piece =
                    bar == std::string::npos ? body.substr(pos) : body.substr(pos, bar - pos);
                std::istringstream ps(piece);
                std::vector<int> clause;
                int idx;
                while (ps >> idx) clause.push_back(idx);
                if (clause.empty()) raise(errc::parse_error, "empty clause in cnf line");
                cls.push_back(std::move(clause));
                if (bar == std::string::npos) break;
                pos = bar + 1;
            }
            clauses = std::move(cls);
        } else if (starts("tt:")) {
            std::string body = stripped.substr(3);
            std::string hex;
            for (char c : body)
                if (!std::isspace(static_cast<unsigned char>(c))) hex += c;
            tt = hex;
        } else {
            raise(errc::parse_error, "unrecognized query-spec line '" + stripped + "'");
        }
    }

    if (!k) raise(errc::parse_error, "query spec needs a k= line");
    if (!clauses && !tt) raise(errc::parse_error, "query spec needs a cnf: or tt: line");
    if (clauses && tt) raise(errc::parse_error, "query spec has both cnf: and tt:");
    int m = arity ? *arity : *k + 1;
    CombinatorFn g = clauses ? CombinatorFn::from_clauses(m, *clauses)
                             : CombinatorFn::from_table_hex(m, *tt);
    return QuerySpec(std::move(g), *k, n);
}

std::string QuerySpec::str() const {
    std::ostringstream os;
    os << "k=" << k_ << '\n';
    if (n_) os << "n=" << *n_ << '\n';
    if (g_.arity() != k_ + 1) os << "arity=" << g_.arity() << '\n';
    if (g_.clauses()) {
        os << "cnf:";
        const auto& cls = *g_.clauses();
        for (std::size_t c = 0; c < cls.size(); ++c) {
            if (c) os << " |";
            for (int l : cls[c]) os << ' ' << l;
        }
        os << '\n';
    } else {
        os << "tt: " << g_.table_hex() << '\n';
    }
    return os.str();
}

} // namespace wmclab
