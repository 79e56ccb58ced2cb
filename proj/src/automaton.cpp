#include "ctrlcheck/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace ctrlcheck
{

namespace
{

std::string join_violations(const std::vector<std::string>& v)
{
    std::string out = "invalid automaton";
    for (const auto& s : v)
        out += "\n  " + s;
    return out;
}

std::string subset_name(const Automaton& a, const std::vector<StateId>& members)
{
    std::string out = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i)
            out += ',';
        out += a.state_name(members[i]);
    }
    return out + "}";
}

} // namespace

InvalidAutomaton::InvalidAutomaton(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations))
{
}

// ALPHABET

Alphabet::Alphabet(const std::set<std::string>& controllable, const std::set<std::string>& uncontrollable)
{
    std::map<std::string, bool> all;
    std::vector<std::string> problems;
    for (const auto& c : controllable) {
        if (c.empty())
            problems.emplace_back("empty event name");
        all[c] = false;
    }
    for (const auto& u : uncontrollable) {
        if (u.empty())
            problems.emplace_back("empty event name");
        if (all.count(u))
            problems.push_back("event '" + u + "' is both controllable and uncontrollable");
        all[u] = true;
    }
    if (!problems.empty())
        throw InvalidAutomaton(problems);
    for (const auto& [name, unc] : all) {
        names_.push_back(name);
        uncontrollable_.push_back(unc);
    }
}

std::optional<EventId> Alphabet::find(std::string_view name) const
{
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name)
        return std::nullopt;
    return static_cast<EventId>(it - names_.begin());
}

std::set<std::string> Alphabet::controllable() const
{
    std::set<std::string> out;
    for (std::size_t e = 0; e < names_.size(); ++e)
        if (!uncontrollable_[e])
            out.insert(names_[e]);
    return out;
}

std::set<std::string> Alphabet::uncontrollable() const
{
    std::set<std::string> out;
    for (std::size_t e = 0; e < names_.size(); ++e)
        if (uncontrollable_[e])
            out.insert(names_[e]);
    return out;
}

std::vector<EventId> Alphabet::uncontrollable_events() const
{
    std::vector<EventId> out;
    for (std::size_t e = 0; e < names_.size(); ++e)
        if (uncontrollable_[e])
            out.push_back(static_cast<EventId>(e));
    return out;
}

// VALIDATION

std::vector<std::string> validate(const AutomatonDescription& d)
{
    std::vector<std::string> out;

    std::set<std::string> events;
    std::set<std::string> controllable;
    for (const auto& c : d.controllable) {
        if (c.empty())
            out.emplace_back("empty event name");
        else if (!events.insert(c).second)
            out.push_back("duplicate event '" + c + "'");
        controllable.insert(c);
    }
    for (const auto& u : d.uncontrollable) {
        if (u.empty())
            out.emplace_back("empty event name");
        else if (controllable.count(u))
            out.push_back("event '" + u + "' is both controllable and uncontrollable");
        else if (!events.insert(u).second)
            out.push_back("duplicate event '" + u + "'");
    }

    std::set<std::string> states;
    for (const auto& s : d.states) {
        if (s.empty())
            out.emplace_back("empty state name");
        else if (!states.insert(s).second)
            out.push_back("duplicate state '" + s + "'");
    }

    if (d.initial.empty())
        out.emplace_back("initial state missing");
    else if (!states.count(d.initial))
        out.push_back("initial not declared: '" + d.initial + "'");

    for (const auto& t : d.transitions) {
        const std::string where = " in transition " + t.source + " " + t.event + " " + t.target;
        if (!events.count(t.event))
            out.push_back("unknown event '" + t.event + "'" + where);
        if (!states.count(t.source))
            out.push_back("dangling state '" + t.source + "'" + where);
        if (!states.count(t.target))
            out.push_back("dangling state '" + t.target + "'" + where);
    }
    return out;
}

// AUTOMATON

Automaton::Automaton(const AutomatonDescription& d)
{
    if (auto violations = validate(d); !violations.empty())
        throw InvalidAutomaton(std::move(violations));

    name_ = d.name;
    alphabet_ = Alphabet({d.controllable.begin(), d.controllable.end()},
                         {d.uncontrollable.begin(), d.uncontrollable.end()});
    state_names_ = d.states;
    for (std::size_t i = 0; i < state_names_.size(); ++i)
        state_index_.emplace(state_names_[i], static_cast<StateId>(i));
    initial_ = state_index_.at(d.initial);

    for (const auto& t : d.transitions)
        transitions_.push_back({state_index_.at(t.source), *alphabet_.find(t.event), state_index_.at(t.target)});
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());

    succ_.assign(state_names_.size() * alphabet_.size(), {});
    for (const auto& t : transitions_)
        succ_[static_cast<std::size_t>(t.source) * alphabet_.size() + t.event].push_back(t.target);
}

AutomatonDescription Automaton::describe() const
{
    AutomatonDescription d;
    d.name = name_;
    for (const auto& c : alphabet_.controllable())
        d.controllable.push_back(c);
    for (const auto& u : alphabet_.uncontrollable())
        d.uncontrollable.push_back(u);
    d.states = state_names_;
    d.initial = state_names_[initial_];
    for (const auto& t : transitions_)
        d.transitions.push_back({state_names_[t.source], alphabet_.name(t.event), state_names_[t.target]});
    return d;
}

std::optional<StateId> Automaton::find_state(std::string_view name) const
{
    auto it = state_index_.find(std::string(name));
    if (it == state_index_.end())
        return std::nullopt;
    return it->second;
}

bool Automaton::has_transition(StateId q, EventId e, StateId t) const
{
    auto succ = successors(q, e);
    return std::binary_search(succ.begin(), succ.end(), t);
}

bool Automaton::operator==(const Automaton& other) const
{
    return name_ == other.name_ && alphabet_ == other.alphabet_ && state_names_ == other.state_names_ &&
           initial_ == other.initial_ && transitions_ == other.transitions_;
}

void require_same_alphabet(const Automaton& a, const Automaton& b)
{
    if (a.alphabet() == b.alphabet())
        return;
    auto render = [](const Alphabet& s) {
        std::ostringstream os;
        os << "controllable {";
        for (const auto& c : s.controllable())
            os << ' ' << c;
        os << " } uncontrollable {";
        for (const auto& u : s.uncontrollable())
            os << ' ' << u;
        os << " }";
        return os.str();
    };
    throw AlphabetMismatch("alphabet mismatch between '" + a.name() + "' (" + render(a.alphabet()) + ") and '" +
                           b.name() + "' (" + render(b.alphabet()) + ")");
}

// OPERATIONS

bool is_deterministic(const Automaton& a)
{
    for (StateId q = 0; q < a.num_states(); ++q)
        for (EventId e = 0; e < a.alphabet().size(); ++e)
            if (a.successors(q, e).size() > 1)
                return false;
    return true;
}

std::vector<StateId> reachable(const Automaton& a)
{
    std::vector<bool> seen(a.num_states(), false);
    std::vector<StateId> stack{a.initial()};
    seen[a.initial()] = true;
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (EventId e = 0; e < a.alphabet().size(); ++e)
            for (StateId t : a.successors(q, e))
                if (!seen[t]) {
                    seen[t] = true;
                    stack.push_back(t);
                }
    }
    std::vector<StateId> out;
    for (StateId q = 0; q < a.num_states(); ++q)
        if (seen[q])
            out.push_back(q);
    return out;
}

std::vector<EventId> enabled(const Automaton& a, StateId q)
{
    std::vector<EventId> out;
    for (EventId e = 0; e < a.alphabet().size(); ++e)
        if (a.enables(q, e))
            out.push_back(e);
    return out;
}

std::vector<StateId> post(const Automaton& a, std::vector<StateId> from, std::span<const EventId> w)
{
    std::sort(from.begin(), from.end());
    from.erase(std::unique(from.begin(), from.end()), from.end());
    for (EventId e : w) {
        std::vector<StateId> next;
        for (StateId q : from) {
            auto succ = a.successors(q, e);
            next.insert(next.end(), succ.begin(), succ.end());
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        from = std::move(next);
        if (from.empty())
            break;
    }
    return from;
}

bool accepts(const Automaton& a, std::span<const EventId> w)
{
    return !post(a, {a.initial()}, w).empty();
}

Product product_with_pairs(const Automaton& g, const Automaton& h)
{
    require_same_alphabet(g, h);
    const auto& sigma = g.alphabet();

    std::map<std::pair<StateId, StateId>, StateId> index;
    std::vector<std::pair<StateId, StateId>> pairs;
    std::deque<StateId> queue;
    auto intern = [&](std::pair<StateId, StateId> p) {
        auto [it, fresh] = index.emplace(p, static_cast<StateId>(pairs.size()));
        if (fresh) {
            pairs.push_back(p);
            queue.push_back(it->second);
        }
        return it->second;
    };

    std::vector<Transition> trans;
    intern({g.initial(), h.initial()});
    while (!queue.empty()) {
        StateId id = queue.front();
        queue.pop_front();
        auto [x, y] = pairs[id];
        for (EventId e = 0; e < sigma.size(); ++e)
            for (StateId x2 : g.successors(x, e))
                for (StateId y2 : h.successors(y, e))
                    trans.push_back({id, e, intern({x2, y2})});
    }

    AutomatonDescription d;
    d.name = g.name() + "||" + h.name();
    for (const auto& c : sigma.controllable())
        d.controllable.push_back(c);
    for (const auto& u : sigma.uncontrollable())
        d.uncontrollable.push_back(u);
    for (auto [x, y] : pairs)
        d.states.push_back("(" + g.state_name(x) + "," + h.state_name(y) + ")");
    d.initial = d.states.front();
    for (const auto& t : trans)
        d.transitions.push_back({d.states[t.source], sigma.name(t.event), d.states[t.target]});
    return {Automaton(d), std::move(pairs)};
}

Automaton product(const Automaton& g, const Automaton& h)
{
    return product_with_pairs(g, h).automaton;
}

bool is_subautomaton(const Automaton& s, const Automaton& p)
{
    if (s.alphabet() != p.alphabet())
        return false;
    if (s.state_name(s.initial()) != p.state_name(p.initial()))
        return false;
    std::vector<StateId> to_p(s.num_states());
    for (StateId q = 0; q < s.num_states(); ++q) {
        auto mapped = p.find_state(s.state_name(q));
        if (!mapped)
            return false;
        to_p[q] = *mapped;
    }
    for (const auto& t : s.transitions())
        if (!p.has_transition(to_p[t.source], t.event, to_p[t.target]))
            return false;
    return true;
}

Determinized determinize(const Automaton& a, std::size_t cap)
{
    const auto& sigma = a.alphabet();
    std::map<std::vector<StateId>, StateId> index;
    std::vector<SubsetState> subsets;
    std::deque<StateId> queue;
    auto intern = [&](std::vector<StateId> members) {
        auto [it, fresh] = index.emplace(members, static_cast<StateId>(subsets.size()));
        if (fresh) {
            if (subsets.size() >= cap)
                throw StateExplosion("determinization of '" + a.name() + "' exceeds " + std::to_string(cap) +
                                     " subset states");
            subsets.push_back({std::move(members)});
            queue.push_back(it->second);
        }
        return it->second;
    };

    std::vector<Transition> trans;
    intern({a.initial()});
    while (!queue.empty()) {
        StateId id = queue.front();
        queue.pop_front();
        for (EventId e = 0; e < sigma.size(); ++e) {
            EventId ev[] = {e};
            auto next = post(a, subsets[id].members, ev);
            if (!next.empty())
                trans.push_back({id, e, intern(std::move(next))});
        }
    }

    AutomatonDescription d;
    d.name = "det(" + a.name() + ")";
    for (const auto& c : sigma.controllable())
        d.controllable.push_back(c);
    for (const auto& u : sigma.uncontrollable())
        d.uncontrollable.push_back(u);
    for (const auto& s : subsets)
        d.states.push_back(subset_name(a, s.members));
    d.initial = d.states.front();
    for (const auto& t : trans)
        d.transitions.push_back({d.states[t.source], sigma.name(t.event), d.states[t.target]});
    return {Automaton(d), std::move(subsets)};
}

std::set<Word> bounded_language(const Automaton& a, std::size_t k)
{
    std::set<Word> out;
    std::vector<std::pair<Word, std::vector<StateId>>> frontier{{Word{}, {a.initial()}}};
    out.insert(Word{});
    for (std::size_t depth = 0; depth < k && !frontier.empty(); ++depth) {
        std::vector<std::pair<Word, std::vector<StateId>>> next;
        for (const auto& [w, states] : frontier)
            for (EventId e = 0; e < a.alphabet().size(); ++e) {
                EventId ev[] = {e};
                auto reached = post(a, states, ev);
                if (reached.empty())
                    continue;
                Word w2 = w;
                w2.push_back(e);
                out.insert(w2);
                next.emplace_back(std::move(w2), std::move(reached));
            }
        frontier = std::move(next);
    }
    return out;
}

std::vector<std::optional<Word>> access_words(const Automaton& a)
{
    std::vector<std::optional<Word>> out(a.num_states());
    std::deque<StateId> queue{a.initial()};
    out[a.initial()] = Word{};
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        for (EventId e = 0; e < a.alphabet().size(); ++e)
            for (StateId t : a.successors(q, e))
                if (!out[t]) {
                    Word w = *out[q];
                    w.push_back(e);
                    out[t] = std::move(w);
                    queue.push_back(t);
                }
    }
    return out;
}

std::vector<std::string> event_names(const Alphabet& sigma, std::span<const EventId> w)
{
    std::vector<std::string> out;
    out.reserve(w.size());
    for (EventId e : w)
        out.push_back(sigma.name(e));
    return out;
}

std::string format_word(const Alphabet& sigma, std::span<const EventId> w)
{
    if (w.empty())
        return "ε";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += ' ';
        out += sigma.name(w[i]);
    }
    return out;
}

std::optional<Word> resolve_word(const Alphabet& sigma, const std::vector<std::string>& names)
{
    Word w;
    for (const auto& n : names) {
        auto e = sigma.find(n);
        if (!e)
            return std::nullopt;
        w.push_back(*e);
    }
    return w;
}

} // namespace ctrlcheck
