#include "ctrlcheck/generator.hpp"

#include "ctrlcheck/aut_io.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace ctrlcheck
{

namespace
{

// Draws use raw modulo and bit shifts rather than std distributions, whose
// output is implementation-defined, so streams are identical everywhere.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(gen_() % n); }
    bool chance(double p) { return static_cast<double>(gen_() >> 11) * 0x1.0p-53 < p; }
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

private:
    std::mt19937_64 gen_;
};

struct Events
{
    std::vector<std::string> controllable;
    std::vector<std::string> uncontrollable;

    std::size_t size() const { return controllable.size() + uncontrollable.size(); }
    const std::string& at(std::size_t i) const
    {
        return i < controllable.size() ? controllable[i] : uncontrollable[i - controllable.size()];
    }
    bool is_uncontrollable(std::size_t i) const { return i >= controllable.size(); }
};

Events draw_events(Rng& rng, const GenParams& params)
{
    Events ev;
    const std::size_t nc = params.controllable_events ? rng.between(1, params.controllable_events) : 0;
    const std::size_t nu = params.uncontrollable_events ? rng.between(1, params.uncontrollable_events) : 0;
    for (std::size_t i = 1; i <= nc; ++i)
        ev.controllable.push_back("c" + std::to_string(i));
    for (std::size_t i = 1; i <= nu; ++i)
        ev.uncontrollable.push_back("u" + std::to_string(i));
    return ev;
}

AutomatonDescription blank(const std::string& name, const Events& ev)
{
    AutomatonDescription d;
    d.name = name;
    d.controllable = ev.controllable;
    d.uncontrollable = ev.uncontrollable;
    return d;
}

AutomatonDescription random_automaton(Rng& rng, const std::string& name, const std::string& prefix, std::size_t n,
                                      const Events& ev, double density, bool det)
{
    auto d = blank(name, ev);
    for (std::size_t i = 0; i < n; ++i)
        d.states.push_back(prefix + std::to_string(i));
    d.initial = d.states.front();

    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> edges;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> used;
    auto add = [&](std::size_t q, std::size_t e, std::size_t t) {
        if (edges.emplace(q, e, t).second)
            ++used[{q, e}];
    };
    auto free_events = [&](std::size_t q) {
        std::vector<std::size_t> out;
        for (std::size_t e = 0; e < ev.size(); ++e)
            if (!det || !used.count({q, e}))
                out.push_back(e);
        return out;
    };

    // Spanning tree so that every state is reachable.
    if (ev.size() > 0)
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<std::size_t> parents;
            for (std::size_t j = 0; j < i; ++j)
                if (!free_events(j).empty())
                    parents.push_back(j);
            const std::size_t parent = parents[rng.below(parents.size())];
            const auto fe = free_events(parent);
            add(parent, fe[rng.below(fe.size())], i);
        }

    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t e = 0; e < ev.size(); ++e) {
            const double p = std::min(1.0, density * (ev.is_uncontrollable(e) ? 1.5 : 1.0));
            if ((!det || !used.count({q, e})) && rng.chance(p))
                add(q, e, rng.below(n));
            if (!det && rng.chance(p * 0.5))
                add(q, e, rng.below(n));
        }

    for (const auto& [q, e, t] : edges)
        d.transitions.push_back({d.states[q], ev.at(e), d.states[t]});
    return d;
}

void prune_unreachable(AutomatonDescription& d)
{
    std::set<std::string> seen{d.initial};
    std::deque<std::string> queue{d.initial};
    while (!queue.empty()) {
        auto q = queue.front();
        queue.pop_front();
        for (const auto& t : d.transitions)
            if (t.source == q && seen.insert(t.target).second)
                queue.push_back(t.target);
    }
    std::erase_if(d.states, [&](const std::string& q) { return !seen.count(q); });
    std::erase_if(d.transitions, [&](const TransitionSpec& t) { return !seen.count(t.source); });
}

/// Keeps one random transition per (source, event).
void force_deterministic(Rng& rng, AutomatonDescription& d)
{
    std::map<std::pair<std::string, std::string>, std::vector<TransitionSpec>> groups;
    for (const auto& t : d.transitions)
        groups[{t.source, t.event}].push_back(t);
    d.transitions.clear();
    for (auto& [key, ts] : groups)
        d.transitions.push_back(ts[rng.below(ts.size())]);
}

void drop_transitions(Rng& rng, AutomatonDescription& d, double p)
{
    std::vector<TransitionSpec> kept;
    for (const auto& t : d.transitions)
        if (!rng.chance(p))
            kept.push_back(t);
    d.transitions = std::move(kept);
}

AutomatonDescription renamed(const AutomatonDescription& d, const std::string& name, const std::string& from,
                             const std::string& to)
{
    auto swap = [&](const std::string& q) { return to + q.substr(from.size()); };
    AutomatonDescription out = d;
    out.name = name;
    for (auto& q : out.states)
        q = swap(q);
    out.initial = swap(out.initial);
    for (auto& t : out.transitions) {
        t.source = swap(t.source);
        t.target = swap(t.target);
    }
    return out;
}

bool has_edge(const AutomatonDescription& d, const std::string& q, const std::string& e)
{
    return std::any_of(d.transitions.begin(), d.transitions.end(),
                       [&](const TransitionSpec& t) { return t.source == q && t.event == e; });
}

/// A supervisor over the plant's alphabet, built by one of several strategies.
AutomatonDescription derive_supervisor(Rng& rng, const GenParams& params, const AutomatonDescription& plant,
                                       const Events& ev)
{
    const bool det = params.deterministic || params.deterministic_supervisor;
    AutomatonDescription s;
    switch (rng.below(4)) {
    case 0: // independent
        return random_automaton(rng, "supervisor", "s", rng.between(params.min_states, params.max_states), ev,
                                params.density, det);
    case 1: // copy with transitions removed
        s = renamed(plant, "supervisor", "p", "s");
        drop_transitions(rng, s, 0.3);
        break;
    case 2: { // copy with one state split in two
        s = renamed(plant, "supervisor", "p", "s");
        const std::string victim = s.states[rng.below(s.states.size())];
        const std::string twin = "s" + std::to_string(s.states.size());
        s.states.push_back(twin);
        std::vector<TransitionSpec> extra;
        for (auto& t : s.transitions) {
            if (t.source == victim)
                extra.push_back({twin, t.event, t.target == victim ? twin : t.target});
            if (t.target == victim && rng.chance(0.5))
                t.target = twin;
        }
        s.transitions.insert(s.transitions.end(), extra.begin(), extra.end());
        drop_transitions(rng, s, 0.15);
        break;
    }
    default: // copy with transitions added
        s = renamed(plant, "supervisor", "p", "s");
        for (std::size_t k = rng.between(1, 3); k > 0; --k) {
            const auto& q = s.states[rng.below(s.states.size())];
            const auto& e = ev.at(rng.below(ev.size()));
            if (det && has_edge(s, q, e))
                continue;
            s.transitions.push_back({q, e, s.states[rng.below(s.states.size())]});
        }
        break;
    }
    if (det)
        force_deterministic(rng, s);
    prune_unreachable(s);
    return s;
}

Instance make_pair(const GenParams& params)
{
    Rng rng(params.seed);
    const Events ev = draw_events(rng, params);
    const std::size_t n = rng.between(params.min_states, params.max_states);
    auto plant = random_automaton(rng, "plant", "p", n, ev, params.density, params.deterministic);

    AutomatonDescription sup;
    if (params.mode == GenMode::subautomaton_pair) {
        sup = plant;
        sup.name = "supervisor";
        drop_transitions(rng, sup, 0.3);
        if (params.deterministic_supervisor)
            force_deterministic(rng, sup);
        prune_unreachable(sup);
    } else if (ev.size() == 0) {
        sup = random_automaton(rng, "supervisor", "s", 1, ev, 0, true);
    } else {
        sup = derive_supervisor(rng, params, plant, ev);
    }
    return {Automaton(sup), Automaton(plant)};
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

bool keeps_context(const ContextProfile& before, const ContextProfile& after)
{
    return (!before.s_deterministic || after.s_deterministic) && (!before.p_deterministic || after.p_deterministic) &&
           (!before.subautomaton || after.subautomaton) &&
           (!before.language_inclusion || after.language_inclusion) &&
           (!before.alphabets_equal || after.alphabets_equal);
}

void remove_transition(AutomatonDescription& d, const TransitionSpec& t)
{
    std::erase_if(d.transitions, [&](const TransitionSpec& x) {
        return x.source == t.source && x.event == t.event && x.target == t.target;
    });
}

bool remove_state(AutomatonDescription& d, const std::string& q)
{
    if (q == d.initial || std::find(d.states.begin(), d.states.end(), q) == d.states.end())
        return false;
    std::erase(d.states, q);
    std::erase_if(d.transitions, [&](const TransitionSpec& t) { return t.source == q || t.target == q; });
    return true;
}

using Candidate = std::pair<AutomatonDescription, AutomatonDescription>;

std::vector<Candidate> candidates(const AutomatonDescription& s, const AutomatonDescription& p)
{
    std::vector<Candidate> out;
    for (const auto& t : s.transitions) {
        Candidate c{s, p};
        remove_transition(c.first, t);
        out.push_back(c);
        remove_transition(c.second, t);
        out.push_back(std::move(c));
    }
    for (const auto& t : p.transitions) {
        Candidate c{s, p};
        remove_transition(c.second, t);
        out.push_back(std::move(c));
    }
    for (const auto& q : s.states) {
        Candidate c{s, p};
        if (!remove_state(c.first, q))
            continue;
        out.push_back(c);
        if (remove_state(c.second, q))
            out.push_back(std::move(c));
    }
    for (const auto& q : p.states) {
        Candidate c{s, p};
        if (remove_state(c.second, q))
            out.push_back(std::move(c));
    }
    return out;
}

} // namespace

std::string_view to_string(GenMode m)
{
    switch (m) {
    case GenMode::free: return "free";
    case GenMode::pair: return "pair";
    case GenMode::subautomaton_pair: return "subautomaton-pair";
    }
    return "?";
}

std::optional<GenMode> parse_gen_mode(std::string_view s)
{
    for (GenMode m : {GenMode::free, GenMode::pair, GenMode::subautomaton_pair})
        if (to_string(m) == s)
            return m;
    if (s == "subautomaton_pair")
        return GenMode::subautomaton_pair;
    return std::nullopt;
}

void GenParams::validate() const
{
    if (min_states < 1 || max_states < min_states)
        throw Error("generator: need 1 <= min_states <= max_states");
    if (density < 0.0 || density > 1.0)
        throw Error("generator: density must lie in [0, 1]");
}

GenParams params_for_theorem(int theorem, std::uint64_t seed)
{
    GenParams p;
    p.seed = seed;
    switch (theorem) {
    case 1: break;
    case 2: p.deterministic_supervisor = true; break;
    case 3: p.deterministic = true; break;
    case 4: p.mode = GenMode::subautomaton_pair; break;
    default: throw Error("no theorem " + std::to_string(theorem) + " (expected 1 to 4)");
    }
    return p;
}

std::uint64_t instance_seed(std::uint64_t seed, std::size_t i)
{
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(i) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Automaton generate_automaton(const GenParams& params)
{
    params.validate();
    Rng rng(params.seed);
    const Events ev = draw_events(rng, params);
    const std::size_t n = rng.between(params.min_states, params.max_states);
    return Automaton(random_automaton(rng, "generated", "q", n, ev, params.density, params.deterministic));
}

Instance generate_pair(const GenParams& params)
{
    params.validate();
    if (params.mode == GenMode::free)
        throw Error("generator: mode 'free' yields a single automaton, not a pair");
    return make_pair(params);
}

std::vector<Instance> generate_pairs(const GenParams& params, std::size_t count)
{
    std::vector<Instance> out;
    out.reserve(count);
    GenParams p = params;
    for (std::size_t i = 0; i < count; ++i) {
        p.seed = instance_seed(params.seed, i);
        out.push_back(generate_pair(p));
    }
    return out;
}

GenParams parse_gen_config(std::string_view text, GenParams base, const std::string& origin)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(origin, lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        auto as_uint = [&]() -> std::uint64_t {
            std::uint64_t v = 0;
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
            if (ec != std::errc() || ptr != value.data() + value.size())
                throw ParseError(origin, lineno, "'" + key + "' expects a non-negative integer");
            return v;
        };
        auto as_bool = [&]() {
            if (value == "true" || value == "1")
                return true;
            if (value == "false" || value == "0")
                return false;
            throw ParseError(origin, lineno, "'" + key + "' expects true or false");
        };

        if (key == "seed")
            base.seed = as_uint();
        else if (key == "min_states")
            base.min_states = as_uint();
        else if (key == "max_states")
            base.max_states = as_uint();
        else if (key == "controllable_events")
            base.controllable_events = as_uint();
        else if (key == "uncontrollable_events")
            base.uncontrollable_events = as_uint();
        else if (key == "density") {
            try {
                std::size_t used = 0;
                base.density = std::stod(value, &used);
                if (used != value.size())
                    throw std::invalid_argument(value);
            } catch (const std::exception&) {
                throw ParseError(origin, lineno, "'density' expects a number");
            }
        } else if (key == "deterministic")
            base.deterministic = as_bool();
        else if (key == "deterministic_supervisor")
            base.deterministic_supervisor = as_bool();
        else if (key == "mode") {
            auto m = parse_gen_mode(value);
            if (!m)
                throw ParseError(origin, lineno, "unknown mode '" + value + "'");
            base.mode = *m;
        } else
            throw ParseError(origin, lineno, "unknown key '" + key + "'");
    }
    return base;
}

GenParams load_gen_config(const std::filesystem::path& path, GenParams base)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path.string(), 0, "cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_gen_config(buf.str(), base, path.string());
}

Instance shrink(const Instance& instance, const PairProperty& property)
{
    const auto context = classify(instance.supervisor, instance.plant);
    auto s = instance.supervisor.describe();
    auto p = instance.plant.describe();

    for (bool progress = true; progress;) {
        progress = false;
        for (auto& [cs, cp] : candidates(s, p)) {
            try {
                Automaton as(cs), ap(cp);
                if (!keeps_context(context, classify(as, ap)) || property(as, ap))
                    continue;
            } catch (const InvalidAutomaton&) {
                continue;
            }
            s = std::move(cs);
            p = std::move(cp);
            progress = true;
            break;
        }
    }
    return {Automaton(s), Automaton(p)};
}

std::size_t instance_size(const Instance& instance)
{
    return instance.supervisor.num_states() + instance.supervisor.transitions().size() +
           instance.plant.num_states() + instance.plant.transitions().size();
}

} // namespace ctrlcheck
