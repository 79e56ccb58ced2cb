// Relation-based notions (CR, PB, PBn) and the SC embedding search.
//
// The greatest relation is computed by naive rounds of deletion over
// Q_S x Q_P: each round removes, simultaneously, every pair that violates a
// transfer condition against the relation left by the previous round. A
// pair deleted in round r always has a recorded cause that is either local
// (a missing transition) or points at a pair deleted in an earlier round,
// so following causes from the initial pair yields a finite chain.

#include "verdicts.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>

namespace ctrlcheck
{

namespace
{

enum class Rules
{
    control_relation,
    partial_bisimulation,
    embedding, // supervisor steps must be matched; no forbidden uncontrollable events
};

struct Cause
{
    int condition = 1;
    EventId event = 0;
    bool local = true;
    StateId next_s = 0; // successor pair when !local
    StateId next_p = 0;
    StateId target = 0; // local: the unmatched target (S side for 1, P side for 2)
};

class Fixpoint
{
public:
    Fixpoint(const Automaton& s, const Automaton& p, Rules rules)
        : s_(s), p_(p), rules_(rules), round_(s.num_states() * p.num_states(), kAlive),
          cause_(s.num_states() * p.num_states())
    {
        for (int round = 0;; ++round) {
            std::vector<std::pair<std::size_t, Cause>> doomed;
            for (StateId x = 0; x < s_.num_states(); ++x)
                for (StateId y = 0; y < p_.num_states(); ++y)
                    if (alive(x, y))
                        if (auto c = violation(x, y))
                            doomed.emplace_back(index(x, y), *c);
            if (doomed.empty())
                break;
            for (auto& [i, c] : doomed) {
                round_[i] = round;
                cause_[i] = c;
            }
        }
    }

    bool alive(StateId x, StateId y) const { return round_[index(x, y)] == kAlive; }
    int round(StateId x, StateId y) const { return round_[index(x, y)]; }
    const Cause& cause(StateId x, StateId y) const { return cause_[index(x, y)]; }

private:
    static constexpr int kAlive = std::numeric_limits<int>::max();

    std::size_t index(StateId x, StateId y) const { return static_cast<std::size_t>(x) * p_.num_states() + y; }

    // Depth of a cause: local causes first, then those whose successor died earliest.
    int depth(const Cause& c) const { return c.local ? -1 : round(c.next_s, c.next_p); }

    std::optional<Cause> violation(StateId x, StateId y) const
    {
        std::optional<Cause> best;
        auto consider = [&](Cause c) {
            if (!best || depth(c) < depth(*best))
                best = c;
        };
        const auto& sigma = s_.alphabet();

        // Supervisor steps must be matched by the plant.
        for (EventId e = 0; e < sigma.size(); ++e) {
            auto xs = s_.successors(x, e);
            auto ys = p_.successors(y, e);
            if (rules_ == Rules::control_relation) {
                for (StateId x2 : xs)
                    for (StateId y2 : ys)
                        if (!alive(x2, y2))
                            consider({1, e, false, x2, y2, 0});
                continue;
            }
            for (StateId x2 : xs) {
                if (ys.empty()) {
                    consider({1, e, true, 0, 0, x2});
                    continue;
                }
                if (std::any_of(ys.begin(), ys.end(), [&](StateId y2) { return alive(x2, y2); }))
                    continue;
                StateId pick = *std::min_element(ys.begin(), ys.end(), [&](StateId a, StateId b) {
                    return round(x2, a) < round(x2, b);
                });
                consider({1, e, false, x2, pick, 0});
            }
        }

        // Uncontrollable plant steps must be matched by the supervisor.
        for (EventId u : sigma.uncontrollable_events()) {
            auto ys = p_.successors(y, u);
            auto xs = s_.successors(x, u);
            if (rules_ == Rules::embedding) {
                if (!ys.empty() && xs.empty())
                    consider({2, u, true, 0, 0, ys.front()});
                continue;
            }
            for (StateId y2 : ys) {
                if (xs.empty()) {
                    consider({2, u, true, 0, 0, y2});
                    continue;
                }
                if (std::any_of(xs.begin(), xs.end(), [&](StateId x2) { return alive(x2, y2); }))
                    continue;
                StateId pick = *std::min_element(xs.begin(), xs.end(), [&](StateId a, StateId b) {
                    return round(a, y2) < round(b, y2);
                });
                consider({2, u, false, pick, y2, 0});
            }
        }
        return best;
    }

    const Automaton& s_;
    const Automaton& p_;
    Rules rules_;
    std::vector<int> round_;
    std::vector<Cause> cause_;
};

Witness chain_witness(const Fixpoint& fix, const Automaton& s, const Automaton& p)
{
    const auto& sigma = s.alphabet();
    Witness wit;
    wit.kind = WitnessKind::transfer;
    StateId x = s.initial();
    StateId y = p.initial();
    wit.pair_path.push_back({s.state_name(x), p.state_name(y)});
    for (;;) {
        const Cause& c = fix.cause(x, y);
        if (c.local) {
            wit.event = sigma.name(c.event);
            wit.condition = c.condition;
            wit.sup_state = s.state_name(x);
            wit.plant_state = p.state_name(y);
            if (c.condition == 1) {
                wit.detail = "supervisor step " + s.state_name(x) + " -" + sigma.name(c.event) + "-> " +
                             s.state_name(c.target) + " cannot be matched by plant state " + p.state_name(y);
            } else {
                wit.plant_target = p.state_name(c.target);
                wit.detail = "uncontrollable plant step " + p.state_name(y) + " -" + sigma.name(c.event) + "-> " +
                             p.state_name(c.target) + " cannot be matched by supervisor state " + s.state_name(x);
            }
            return wit;
        }
        wit.word.push_back(sigma.name(c.event));
        x = c.next_s;
        y = c.next_p;
        wit.pair_path.push_back({s.state_name(x), p.state_name(y)});
    }
}

/// Surviving pairs reachable from the initial pair through joint steps.
std::vector<StatePair> reachable_relation(const Fixpoint& fix, const Automaton& s, const Automaton& p)
{
    std::vector<StatePair> out;
    std::vector<bool> seen(s.num_states() * p.num_states(), false);
    std::deque<std::pair<StateId, StateId>> queue{{s.initial(), p.initial()}};
    seen[static_cast<std::size_t>(s.initial()) * p.num_states() + p.initial()] = true;
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        out.push_back({s.state_name(x), p.state_name(y)});
        for (EventId e = 0; e < s.alphabet().size(); ++e)
            for (StateId x2 : s.successors(x, e))
                for (StateId y2 : p.successors(y, e)) {
                    auto i = static_cast<std::size_t>(x2) * p.num_states() + y2;
                    if (fix.alive(x2, y2) && !seen[i]) {
                        seen[i] = true;
                        queue.emplace_back(x2, y2);
                    }
                }
    }
    return out;
}

Verdict relation_verdict(Notion tag, const Automaton& s, const Automaton& p, Rules rules)
{
    Fixpoint fix(s, p, rules);
    if (!fix.alive(s.initial(), p.initial()))
        return detail::fails(tag, chain_witness(fix, s, p));
    auto v = detail::holds(tag);
    v.relation = reachable_relation(fix, s, p);
    return v;
}

std::optional<std::string> determinism_gap(const Automaton& s, const Automaton& p, bool need_plant)
{
    if (!is_deterministic(s))
        return "supervisor nondeterministic";
    if (need_plant && !is_deterministic(p))
        return "plant nondeterministic";
    return std::nullopt;
}

class EmbeddingSearch
{
public:
    EmbeddingSearch(const Automaton& s, const Automaton& p, const Fixpoint& fix, std::vector<StateId> order)
        : s_(s), p_(p), fix_(fix), order_(std::move(order)), image_(s.num_states(), kUnset),
          incoming_(s.num_states())
    {
        for (const auto& t : s_.transitions())
            incoming_[t.target].push_back(t);
    }

    bool run() { return assign(0); }
    StateId image(StateId q) const { return image_[q]; }

private:
    static constexpr StateId kUnset = std::numeric_limits<StateId>::max();

    bool consistent(StateId q) const
    {
        const StateId fq = image_[q];
        for (EventId e = 0; e < s_.alphabet().size(); ++e)
            for (StateId q2 : s_.successors(q, e))
                if (image_[q2] != kUnset && !p_.has_transition(fq, e, image_[q2]))
                    return false;
        for (const auto& t : incoming_[q])
            if (image_[t.source] != kUnset && !p_.has_transition(image_[t.source], t.event, fq))
                return false;
        return true;
    }

    bool assign(std::size_t i)
    {
        if (i == order_.size())
            return true;
        const StateId q = order_[i];
        for (StateId y = 0; y < p_.num_states(); ++y) {
            if (!fix_.alive(q, y))
                continue;
            if (q == s_.initial() && y != p_.initial())
                continue;
            image_[q] = y;
            if (consistent(q) && assign(i + 1))
                return true;
        }
        image_[q] = kUnset;
        return false;
    }

    const Automaton& s_;
    const Automaton& p_;
    const Fixpoint& fix_;
    std::vector<StateId> order_;
    std::vector<StateId> image_;
    std::vector<std::vector<Transition>> incoming_;
};

/// Supervisor states to embed: breadth-first from the initial state, then
/// (unless reachable_only) the remaining states breadth-first in id order.
std::vector<StateId> embedding_order(const Automaton& s, bool reachable_only)
{
    std::vector<StateId> order;
    std::vector<bool> seen(s.num_states(), false);
    auto sweep = [&](StateId root) {
        if (seen[root])
            return;
        std::deque<StateId> queue{root};
        seen[root] = true;
        while (!queue.empty()) {
            StateId q = queue.front();
            queue.pop_front();
            order.push_back(q);
            for (EventId e = 0; e < s.alphabet().size(); ++e)
                for (StateId t : s.successors(q, e))
                    if (!seen[t]) {
                        seen[t] = true;
                        queue.push_back(t);
                    }
        }
    };
    sweep(s.initial());
    if (!reachable_only)
        for (StateId q = 0; q < s.num_states(); ++q)
            sweep(q);
    return order;
}

} // namespace

Verdict check_pbn(const Automaton& s, const Automaton& p)
{
    require_same_alphabet(s, p);
    return relation_verdict(Notion::PBn, s, p, Rules::partial_bisimulation);
}

Verdict check_pb(const Automaton& s, const Automaton& p)
{
    require_same_alphabet(s, p);
    if (auto gap = determinism_gap(s, p, true))
        return detail::not_applicable(Notion::PB, *gap);
    return relation_verdict(Notion::PB, s, p, Rules::partial_bisimulation);
}

Verdict check_cr(const Automaton& s, const Automaton& p)
{
    require_same_alphabet(s, p);
    if (auto gap = determinism_gap(s, p, true))
        return detail::not_applicable(Notion::CR, *gap);
    return relation_verdict(Notion::CR, s, p, Rules::control_relation);
}

Verdict check_sc(const Automaton& s, const Automaton& p, const CheckOptions& opts)
{
    require_same_alphabet(s, p);
    if (auto gap = determinism_gap(s, p, false))
        return detail::not_applicable(Notion::SC, *gap);

    Fixpoint fix(s, p, Rules::embedding);
    if (!fix.alive(s.initial(), p.initial()))
        return detail::fails(Notion::SC, chain_witness(fix, s, p));

    auto order = embedding_order(s, opts.sc_reachable_only);
    for (StateId q : order) {
        bool hosted = false;
        for (StateId y = 0; y < p.num_states() && !hosted; ++y)
            hosted = fix.alive(q, y);
        if (!hosted) {
            Witness wit;
            wit.kind = WitnessKind::no_embedding;
            wit.sup_state = s.state_name(q);
            wit.detail = "no plant state can host supervisor state " + s.state_name(q);
            return detail::fails(Notion::SC, std::move(wit));
        }
    }

    EmbeddingSearch search(s, p, fix, order);
    if (!search.run()) {
        Witness wit;
        wit.kind = WitnessKind::no_embedding;
        wit.detail = "exhaustive search over candidate images found no embedding";
        return detail::fails(Notion::SC, std::move(wit));
    }
    auto v = detail::holds(Notion::SC);
    std::sort(order.begin(), order.end());
    for (StateId q : order)
        v.embedding.push_back({s.state_name(q), p.state_name(search.image(q))});
    return v;
}

} // namespace ctrlcheck
