#include "ctrlcheck/oracles.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <tuple>

namespace ctrlcheck
{

namespace
{

using Name = std::string;
using NameSet = std::set<Name>;

/// Name-level view of an automaton, built from its description only.
struct Lts
{
    std::vector<Name> states;
    Name initial;
    NameSet events;
    NameSet uncontrollable;
    std::map<Name, std::map<Name, NameSet>> out;
    std::set<std::tuple<Name, Name, Name>> trans;

    explicit Lts(const Automaton& a)
    {
        auto d = a.describe();
        states = d.states;
        initial = d.initial;
        events.insert(d.controllable.begin(), d.controllable.end());
        events.insert(d.uncontrollable.begin(), d.uncontrollable.end());
        uncontrollable.insert(d.uncontrollable.begin(), d.uncontrollable.end());
        for (const auto& t : d.transitions) {
            out[t.source][t.event].insert(t.target);
            trans.emplace(t.source, t.event, t.target);
        }
    }

    const NameSet& succ(const Name& q, const Name& e) const
    {
        static const NameSet none;
        auto it = out.find(q);
        if (it == out.end())
            return none;
        auto jt = it->second.find(e);
        return jt == it->second.end() ? none : jt->second;
    }

    bool enables(const Name& q, const Name& e) const { return !succ(q, e).empty(); }

    bool deterministic() const
    {
        for (const auto& [q, m] : out)
            for (const auto& [e, ts] : m)
                if (ts.size() > 1)
                    return false;
        return true;
    }

    NameSet post(const NameSet& from, const Name& e) const
    {
        NameSet to;
        for (const auto& q : from) {
            const auto& ts = succ(q, e);
            to.insert(ts.begin(), ts.end());
        }
        return to;
    }

    bool any_enables(const NameSet& from, const Name& e) const
    {
        for (const auto& q : from)
            if (enables(q, e))
                return true;
        return false;
    }

    NameSet reach() const
    {
        NameSet seen{initial};
        std::vector<Name> stack{initial};
        while (!stack.empty()) {
            Name q = stack.back();
            stack.pop_back();
            auto it = out.find(q);
            if (it == out.end())
                continue;
            for (const auto& [e, ts] : it->second)
                for (const auto& t : ts)
                    if (seen.insert(t).second)
                        stack.push_back(t);
        }
        return seen;
    }
};

bool same_alphabet(const Lts& s, const Lts& p)
{
    return s.events == p.events && s.uncontrollable == p.uncontrollable;
}

void require_alphabets(const Lts& s, const Lts& p)
{
    if (!same_alphabet(s, p))
        throw AlphabetMismatch("oracle: supervisor and plant alphabets differ");
}

// RELATIONS

class RelationSpace
{
public:
    RelationSpace(const Lts& s, const Lts& p) : s_(s), p_(p)
    {
        for (std::size_t i = 0; i < s.states.size(); ++i)
            sidx_[s.states[i]] = i;
        for (std::size_t j = 0; j < p.states.size(); ++j)
            pidx_[p.states[j]] = j;
    }

    std::size_t size() const { return s_.states.size() * p_.states.size(); }
    std::size_t bit(const Name& x, const Name& y) const { return sidx_.at(x) * p_.states.size() + pidx_.at(y); }
    bool in(std::uint32_t r, const Name& x, const Name& y) const { return (r >> bit(x, y)) & 1u; }
    const Name& sup(std::size_t b) const { return s_.states[b / p_.states.size()]; }
    const Name& plant(std::size_t b) const { return p_.states[b % p_.states.size()]; }

private:
    const Lts& s_;
    const Lts& p_;
    std::map<Name, std::size_t> sidx_;
    std::map<Name, std::size_t> pidx_;
};

bool closed(Notion n, const Lts& s, const Lts& p, const RelationSpace& sp, std::uint32_t r)
{
    auto only = [](const NameSet& xs) -> const Name& { return *xs.begin(); };
    for (std::size_t b = 0; b < sp.size(); ++b) {
        if (!((r >> b) & 1u))
            continue;
        const Name& x = sp.sup(b);
        const Name& y = sp.plant(b);
        for (const auto& a : s.events) {
            const auto& xs = s.succ(x, a);
            const auto& ys = p.succ(y, a);
            if (n == Notion::PBn) {
                for (const auto& x2 : xs) {
                    bool matched = false;
                    for (const auto& y2 : ys)
                        matched = matched || sp.in(r, x2, y2);
                    if (!matched)
                        return false;
                }
            } else if (n == Notion::PB) {
                if (!xs.empty() && (ys.empty() || !sp.in(r, only(xs), only(ys))))
                    return false;
            } else { // CR
                if (!xs.empty() && !ys.empty() && !sp.in(r, only(xs), only(ys)))
                    return false;
            }
        }
        for (const auto& u : s.uncontrollable) {
            const auto& xs = s.succ(x, u);
            const auto& ys = p.succ(y, u);
            if (n == Notion::PBn) {
                for (const auto& y2 : ys) {
                    bool matched = false;
                    for (const auto& x2 : xs)
                        matched = matched || sp.in(r, x2, y2);
                    if (!matched)
                        return false;
                }
            } else if (!ys.empty() && (xs.empty() || !sp.in(r, only(xs), only(ys)))) {
                return false;
            }
        }
    }
    return true;
}

// WORDS

struct WordWalk
{
    const Lts& s;
    const Lts& p;
    Notion n;
    std::size_t depth;
    std::size_t max_words;
    std::size_t words = 0;
    bool violated = false;
    bool premise_failed = false;

    void visit(const NameSet& ss, const NameSet& ps, std::size_t len)
    {
        if (++words > max_words)
            throw BudgetExceeded("oracle: more than " + std::to_string(max_words) + " supervisor words");
        examine(ss, ps);
        if (len == depth)
            return;
        for (const auto& a : s.events) {
            NameSet ss2 = s.post(ss, a);
            if (!ss2.empty())
                visit(ss2, p.post(ps, a), len + 1);
        }
    }

    // ss = Δ_S(q0, w) (nonempty), ps = Δ_P(q0, w).
    void examine(const NameSet& ss, const NameSet& ps)
    {
        if (n == Notion::SCn && ps.empty())
            premise_failed = true;
        for (const auto& u : s.uncontrollable) {
            const bool wu_in_plant = p.any_enables(ps, u);
            switch (n) {
            case Notion::LC:
            case Notion::AC:
                // w ∈ L(S) and wu ∈ L(P) imply wu ∈ L(S)
                if (wu_in_plant && !s.any_enables(ss, u))
                    violated = true;
                break;
            case Notion::FM:
            case Notion::SCn:
                // every q with q0 -w-> q in S enables u
                if (wu_in_plant)
                    for (const auto& q : ss)
                        if (!s.enables(q, u))
                            violated = true;
                break;
            case Notion::FMSub:
                for (const auto& q : ss) {
                    if (!ps.count(q))
                        continue;
                    for (const auto& q2 : p.succ(q, u))
                        if (!s.trans.count({q, u, q2}))
                            violated = true;
                }
                break;
            default:
                break;
            }
        }
    }
};

bool subautomaton(const Lts& s, const Lts& p)
{
    if (!same_alphabet(s, p) || s.initial != p.initial)
        return false;
    NameSet pstates(p.states.begin(), p.states.end());
    for (const auto& q : s.states)
        if (!pstates.count(q))
            return false;
    for (const auto& t : s.trans)
        if (!p.trans.count(t))
            return false;
    return true;
}

bool kt_holds(const Lts& s, const Lts& p)
{
    std::set<std::pair<Name, Name>> seen{{s.initial, p.initial}};
    std::vector<std::pair<Name, Name>> stack{{s.initial, p.initial}};
    while (!stack.empty()) {
        auto [qs, qp] = stack.back();
        stack.pop_back();
        for (const auto& u : s.uncontrollable)
            if (p.enables(qp, u) && !s.enables(qs, u))
                return false;
        for (const auto& a : s.events)
            for (const auto& qs2 : s.succ(qs, a))
                for (const auto& qp2 : p.succ(qp, a))
                    if (seen.emplace(qs2, qp2).second)
                        stack.emplace_back(qs2, qp2);
    }
    return true;
}

} // namespace

Status oracle_relation(const Automaton& sa, const Automaton& pa, Notion n, const OracleBudget& budget)
{
    if (n != Notion::CR && n != Notion::PB && n != Notion::PBn)
        throw Error("oracle_relation: unsupported notion " + std::string(to_string(n)));
    const Lts s(sa), p(pa);
    require_alphabets(s, p);
    if (n != Notion::PBn && (!s.deterministic() || !p.deterministic()))
        return Status::not_applicable;

    const RelationSpace sp(s, p);
    const std::size_t cap = std::min<std::size_t>(budget.max_pairs, 16);
    if (sp.size() > cap)
        throw BudgetExceeded("oracle: " + std::to_string(sp.size()) + " state pairs exceed the budget of " +
                             std::to_string(cap));

    const std::size_t init = sp.bit(s.initial, p.initial);
    const std::size_t others = sp.size() - 1;
    // Spread a mask over the non-initial bit positions.
    auto expand = [&](std::uint32_t m) {
        std::uint32_t r = 1u << init;
        for (std::size_t i = 0, b = 0; i < others; ++i, ++b) {
            if (b == init)
                ++b;
            if ((m >> i) & 1u)
                r |= 1u << b;
        }
        return r;
    };

    for (std::size_t k = 0; k <= others; ++k) {
        if (k == 0) {
            if (closed(n, s, p, sp, expand(0)))
                return Status::holds;
            continue;
        }
        // Gosper's hack: all masks with k bits out of `others`.
        std::uint32_t m = (1u << k) - 1;
        const std::uint32_t limit = 1u << others;
        while (m < limit) {
            if (closed(n, s, p, sp, expand(m)))
                return Status::holds;
            std::uint32_t c = m & (~m + 1);
            std::uint32_t r = m + c;
            m = (((r ^ m) >> 2) / c) | r;
        }
    }
    return Status::fails;
}

std::size_t sufficiency_depth(const Automaton& sa, const Automaton& pa)
{
    const Lts s(sa), p(pa);
    std::set<std::pair<NameSet, NameSet>> seen{{{s.initial}, {p.initial}}};
    std::deque<std::pair<NameSet, NameSet>> queue{{{s.initial}, {p.initial}}};
    while (!queue.empty()) {
        auto [xs, ys] = queue.front();
        queue.pop_front();
        for (const auto& a : s.events) {
            NameSet xs2 = s.post(xs, a);
            if (xs2.empty())
                continue;
            std::pair<NameSet, NameSet> node{xs2, p.post(ys, a)};
            if (seen.insert(node).second)
                queue.push_back(std::move(node));
        }
    }
    return seen.size();
}

TraceOracleResult oracle_trace(const Automaton& sa, const Automaton& pa, Notion n, std::optional<std::size_t> depth,
                               const OracleBudget& budget)
{
    const Lts s(sa), p(pa);
    require_alphabets(s, p);

    TraceOracleResult res;
    if (n == Notion::KT) {
        res.status = kt_holds(s, p) ? Status::holds : Status::fails;
        return res;
    }
    if (n != Notion::LC && n != Notion::AC && n != Notion::FM && n != Notion::SCn && n != Notion::FMSub)
        throw Error("oracle_trace: unsupported notion " + std::string(to_string(n)));
    if (n == Notion::FMSub && !subautomaton(s, p)) {
        res.status = Status::not_applicable;
        return res;
    }

    res.sufficient_depth = sufficiency_depth(sa, pa);
    res.depth = depth.value_or(res.sufficient_depth);
    if (res.depth > budget.max_depth)
        throw BudgetExceeded("oracle: depth " + std::to_string(res.depth) + " exceeds the budget of " +
                             std::to_string(budget.max_depth));

    WordWalk walk{s, p, n, res.depth, budget.max_words};
    walk.visit({s.initial}, {p.initial}, 0);
    res.words = walk.words;
    if (walk.premise_failed)
        res.status = Status::not_applicable;
    else
        res.status = walk.violated ? Status::fails : Status::holds;
    return res;
}

Status oracle_embedding(const Automaton& sa, const Automaton& pa, bool reachable_only)
{
    const Lts s(sa), p(pa);
    require_alphabets(s, p);
    if (!s.deterministic())
        return Status::not_applicable;

    std::vector<Name> domain;
    if (reachable_only) {
        auto r = s.reach();
        for (const auto& q : s.states)
            if (r.count(q))
                domain.push_back(q);
    } else {
        domain = s.states;
    }
    const NameSet in_domain(domain.begin(), domain.end());

    const std::size_t m = p.states.size();
    double total = 1;
    for (std::size_t i = 0; i < domain.size(); ++i)
        total *= static_cast<double>(m);
    if (total > static_cast<double>(1u << 20))
        throw BudgetExceeded("oracle: " + std::to_string(m) + "^" + std::to_string(domain.size()) +
                             " candidate embeddings exceed 2^20");

    std::vector<std::size_t> digits(domain.size(), 0);
    for (;;) {
        std::map<Name, Name> f;
        for (std::size_t i = 0; i < domain.size(); ++i)
            f[domain[i]] = p.states[digits[i]];

        bool ok = f.at(s.initial) == p.initial;
        for (const auto& [q, e, q2] : s.trans) {
            if (!ok)
                break;
            if (in_domain.count(q) && !p.trans.count({f.at(q), e, f.at(q2)}))
                ok = false;
        }
        for (const auto& q : domain) {
            if (!ok)
                break;
            for (const auto& a : s.events)
                if (!s.enables(q, a) && p.enables(f.at(q), a) && s.uncontrollable.count(a))
                    ok = false;
        }
        if (ok)
            return Status::holds;

        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == m)
            digits[i++] = 0;
        if (i == digits.size())
            return Status::fails;
    }
}

Status oracle(Notion n, const Automaton& s, const Automaton& p, const CheckOptions& opts, const OracleBudget& budget)
{
    switch (n) {
    case Notion::CR:
    case Notion::PB:
    case Notion::PBn:
        return oracle_relation(s, p, n, budget);
    case Notion::SC:
        return oracle_embedding(s, p, opts.sc_reachable_only);
    case Notion::SCn:
        return oracle_trace(s, p, opts.relax_scn ? Notion::FM : Notion::SCn, std::nullopt, budget).status;
    default:
        return oracle_trace(s, p, n, std::nullopt, budget).status;
    }
}

} // namespace ctrlcheck
