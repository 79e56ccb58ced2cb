// Witness replay. Each kind is re-checked against the raw automata through
// the basic run operations only; nothing from the checkers is reused.

#include "ctrlcheck/oracles.hpp"

#include <algorithm>

namespace ctrlcheck
{

namespace
{

ReplayResult ok(std::string msg) { return {true, false, std::move(msg)}; }
ReplayResult bad(std::string msg) { return {false, false, std::move(msg)}; }

std::vector<StateId> run(const Automaton& a, const Word& w) { return post(a, {a.initial()}, w); }

std::optional<StateId> lookup(const Automaton& a, const std::optional<std::string>& name)
{
    if (!name)
        return std::nullopt;
    return a.find_state(*name);
}

bool contains(const std::vector<StateId>& v, StateId q) { return std::find(v.begin(), v.end(), q) != v.end(); }

ReplayResult replay_transfer(const Witness& wit, const Automaton& s, const Automaton& p, const Word& w)
{
    const auto& sigma = s.alphabet();
    if (wit.pair_path.size() != w.size() + 1)
        return bad("pair path length does not match the word");
    std::vector<std::pair<StateId, StateId>> path;
    for (const auto& sp : wit.pair_path) {
        auto x = s.find_state(sp.supervisor);
        auto y = p.find_state(sp.plant);
        if (!x || !y)
            return bad("pair path names an unknown state");
        path.emplace_back(*x, *y);
    }
    if (path.front() != std::pair{s.initial(), p.initial()})
        return bad("pair path does not start at the initial pair");
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto [x, y] = path[i];
        auto [x2, y2] = path[i + 1];
        if (!s.has_transition(x, w[i], x2) || !p.has_transition(y, w[i], y2))
            return bad("pair path step " + std::to_string(i) + " is not a joint transition");
    }
    if (!wit.event || !wit.condition)
        return bad("transfer witness lacks its event or condition");
    auto e = sigma.find(*wit.event);
    if (!e)
        return bad("unknown event " + *wit.event);
    auto [x, y] = path.back();
    if (*wit.condition == 1) {
        if (!s.enables(x, *e) || p.enables(y, *e))
            return bad("last pair does not show an unmatched supervisor step");
    } else if (*wit.condition == 2) {
        if (!sigma.is_uncontrollable(*e) || !p.enables(y, *e) || s.enables(x, *e))
            return bad("last pair does not show an unmatched uncontrollable plant step");
    } else {
        return bad("unknown transfer condition");
    }
    return ok("pair chain and local transfer failure confirmed");
}

} // namespace

ReplayResult replay(const Verdict& v, const Automaton& s, const Automaton& p, const CheckOptions& opts)
{
    if (v.status != Status::fails)
        return bad("verdict is not a failure");
    if (!v.witness)
        return bad("failure carries no witness");
    require_same_alphabet(s, p);
    const Witness& wit = *v.witness;
    const auto& sigma = s.alphabet();

    auto w = resolve_word(sigma, wit.word);
    if (!w)
        return bad("witness word uses an unknown event");
    std::optional<EventId> u;
    if (wit.event) {
        u = sigma.find(*wit.event);
        if (!u)
            return bad("unknown event " + *wit.event);
    }
    auto need_unc = [&]() -> std::optional<ReplayResult> {
        if (!u)
            return bad("witness lacks its event");
        if (!sigma.is_uncontrollable(*u))
            return bad(*wit.event + " is controllable");
        return std::nullopt;
    };
    Word wu = *w;
    if (u)
        wu.push_back(*u);

    switch (wit.kind) {
    case WitnessKind::language: {
        if (auto r = need_unc())
            return *r;
        if (!accepts(s, *w))
            return bad("w is not in L(S)");
        if (!accepts(p, wu))
            return bad("wu is not in L(P)");
        if (accepts(s, wu))
            return bad("wu is in L(S)");
        return ok("wu is in L(P) and not in L(S)");
    }
    case WitnessKind::supervisor_state: {
        if (auto r = need_unc())
            return *r;
        auto q = lookup(s, wit.sup_state);
        if (!q)
            return bad("witness lacks a valid supervisor state");
        if (!contains(run(s, *w), *q))
            return bad("supervisor state is not reached on w");
        if (!accepts(p, wu))
            return bad("wu is not in L(P)");
        if (s.enables(*q, *u))
            return bad("supervisor state enables u");
        return ok("supervisor state reached on w disables u while wu is in L(P)");
    }
    case WitnessKind::product_state: {
        if (auto r = need_unc())
            return *r;
        auto x = lookup(s, wit.sup_state);
        auto y = lookup(p, wit.plant_state);
        if (!x || !y)
            return bad("witness lacks a valid state pair");
        // Reachability of the pair itself: walk the product along w.
        std::vector<std::pair<StateId, StateId>> cur{{s.initial(), p.initial()}};
        for (EventId e : *w) {
            std::vector<std::pair<StateId, StateId>> next;
            for (auto [a, b] : cur)
                for (StateId a2 : s.successors(a, e))
                    for (StateId b2 : p.successors(b, e))
                        if (std::find(next.begin(), next.end(), std::pair{a2, b2}) == next.end())
                            next.emplace_back(a2, b2);
            cur = std::move(next);
        }
        if (std::find(cur.begin(), cur.end(), std::pair{*x, *y}) == cur.end())
            return bad("state pair is not reached jointly on w");
        if (!p.enables(*y, *u) || s.enables(*x, *u))
            return bad("pair does not disable u against the plant");
        return ok("reachable pair disables u while the plant enables it");
    }
    case WitnessKind::transition: {
        if (auto r = need_unc())
            return *r;
        if (!is_subautomaton(s, p))
            return bad("supervisor is not a subautomaton of the plant");
        auto q = lookup(s, wit.sup_state);
        auto qp = lookup(p, wit.sup_state);
        auto tp = lookup(p, wit.plant_target);
        if (!q || !qp || !tp)
            return bad("witness lacks valid states");
        if (!contains(run(s, *w), *q))
            return bad("supervisor state is not reached on w");
        if (!p.has_transition(*qp, *u, *tp))
            return bad("plant lacks the transition");
        for (StateId t : s.successors(*q, *u))
            if (s.state_name(t) == *wit.plant_target)
                return bad("supervisor has the transition");
        return ok("plant transition missing from the supervisor");
    }
    case WitnessKind::transfer:
        return replay_transfer(wit, s, p, *w);
    case WitnessKind::no_embedding: {
        if (v.notion != Notion::SC)
            return bad("no-embedding witness on a notion other than SC");
        try {
            if (oracle_embedding(s, p, opts.sc_reachable_only) == Status::fails)
                return ok("exhaustive enumeration finds no embedding");
            return bad("an embedding exists");
        } catch (const BudgetExceeded& e) {
            return {false, true, std::string("cannot replay: ") + e.what()};
        }
    }
    }
    return bad("unknown witness kind");
}

} // namespace ctrlcheck
