#include "ctrlcheck/aut_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ctrlcheck
{

namespace
{

std::vector<std::string> tokenize(std::string_view line)
{
    if (auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
    std::vector<std::string> out;
    std::istringstream is{std::string(line)};
    for (std::string tok; is >> tok;)
        out.push_back(tok);
    return out;
}

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

ParseError::ParseError(std::string origin, std::size_t line, const std::string& message)
    : Error(origin + (line ? ":" + std::to_string(line) : std::string{}) + ": " + message), line_(line)
{
}

AutomatonDescription parse_aut_description(std::string_view text, const std::string& origin)
{
    AutomatonDescription d;
    std::set<std::string> declared;
    std::map<std::string, std::size_t> event_line;
    std::vector<std::size_t> transition_lines;
    std::size_t initial_line = 0;
    std::size_t name_line = 0;

    auto declare_state = [&](const std::string& s, std::size_t line, bool explicit_decl) {
        if (declared.insert(s).second)
            d.states.push_back(s);
        else if (explicit_decl)
            throw ParseError(origin, line, "duplicate state '" + s + "'");
    };
    auto declare_event = [&](const std::string& e, std::size_t line, bool unc) {
        if (auto it = event_line.find(e); it != event_line.end())
            throw ParseError(origin, line,
                             "event '" + e + "' already declared on line " + std::to_string(it->second));
        event_line.emplace(e, line);
        (unc ? d.uncontrollable : d.controllable).push_back(e);
    };

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;

        auto toks = tokenize(line);
        if (toks.empty())
            continue;
        const std::string& head = toks.front();
        if (head == "automaton") {
            if (toks.size() != 2)
                throw ParseError(origin, lineno, "expected 'automaton <name>'");
            if (name_line)
                throw ParseError(origin, lineno, "automaton name already given on line " + std::to_string(name_line));
            d.name = toks[1];
            name_line = lineno;
        } else if (head == "controllable" || head == "uncontrollable") {
            for (std::size_t i = 1; i < toks.size(); ++i)
                declare_event(toks[i], lineno, head == "uncontrollable");
        } else if (head == "initial") {
            if (toks.size() != 2)
                throw ParseError(origin, lineno, "expected 'initial <state>'");
            if (initial_line)
                throw ParseError(origin, lineno, "initial state already given on line " + std::to_string(initial_line));
            d.initial = toks[1];
            initial_line = lineno;
        } else if (head == "state") {
            if (toks.size() < 2)
                throw ParseError(origin, lineno, "expected 'state <state>...'");
            for (std::size_t i = 1; i < toks.size(); ++i)
                declare_state(toks[i], lineno, true);
        } else {
            if (toks.size() != 3)
                throw ParseError(origin, lineno,
                                 "expected '<source> <event> <target>', got " + std::to_string(toks.size()) + " tokens");
            declare_state(toks[0], lineno, false);
            declare_state(toks[2], lineno, false);
            d.transitions.push_back({toks[0], toks[1], toks[2]});
            transition_lines.push_back(lineno);
        }
    }

    if (!initial_line)
        throw ParseError(origin, 0, "missing 'initial <state>' line");
    if (!declared.count(d.initial))
        throw ParseError(origin, initial_line, "initial not declared: '" + d.initial + "'");
    for (std::size_t i = 0; i < d.transitions.size(); ++i)
        if (!event_line.count(d.transitions[i].event))
            throw ParseError(origin, transition_lines[i], "unknown event '" + d.transitions[i].event + "'");
    if (d.name.empty())
        d.name = "unnamed";
    return d;
}

Automaton parse_aut(std::string_view text, const std::string& origin)
{
    auto d = parse_aut_description(text, origin);
    try {
        return Automaton(d);
    } catch (const InvalidAutomaton& e) {
        throw ParseError(origin, 0, e.what());
    }
}

Automaton load_aut(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(path.string(), 0, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_aut(buf.str(), path.string());
}

std::string write_aut(const Automaton& a)
{
    std::ostringstream os;
    os << "automaton " << a.name() << '\n';
    const auto& sigma = a.alphabet();
    if (auto c = sigma.controllable(); !c.empty()) {
        os << "controllable";
        for (const auto& e : c)
            os << ' ' << e;
        os << '\n';
    }
    if (auto u = sigma.uncontrollable(); !u.empty()) {
        os << "uncontrollable";
        for (const auto& e : u)
            os << ' ' << e;
        os << '\n';
    }
    os << "initial " << a.state_name(a.initial()) << '\n';
    os << "state";
    for (StateId q = 0; q < a.num_states(); ++q)
        os << ' ' << a.state_name(q);
    os << '\n';
    for (const auto& t : a.transitions())
        os << a.state_name(t.source) << ' ' << sigma.name(t.event) << ' ' << a.state_name(t.target) << '\n';
    return os.str();
}

void save_aut(const Automaton& a, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path.string());
    out << write_aut(a);
}

std::string to_dot(const Automaton& a)
{
    std::ostringstream os;
    os << "digraph " << quote(a.name()) << " {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=circle];\n";
    os << "  __start [shape=none, label=\"\", width=0, height=0];\n";
    for (StateId q = 0; q < a.num_states(); ++q)
        os << "  " << quote(a.state_name(q)) << ";\n";
    os << "  __start -> " << quote(a.state_name(a.initial())) << ";\n";
    for (const auto& t : a.transitions()) {
        os << "  " << quote(a.state_name(t.source)) << " -> " << quote(a.state_name(t.target))
           << " [label=" << quote(a.alphabet().name(t.event));
        if (a.alphabet().is_uncontrollable(t.event))
            os << ", style=dashed";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace ctrlcheck
