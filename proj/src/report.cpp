#include "ctrlcheck/report.hpp"

namespace ctrlcheck
{

namespace
{

Json pairs(const std::vector<StatePair>& ps)
{
    Json a = Json::array();
    for (const auto& p : ps)
        a.push_back({p.supervisor, p.plant});
    return a;
}

std::vector<StatePair> pairs_from(const Json& j)
{
    std::vector<StatePair> out;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2)
            throw Error("verdict JSON: state pair must be a two-element array");
        out.push_back({p[0].get<std::string>(), p[1].get<std::string>()});
    }
    return out;
}

template <typename T>
void put(Json& j, const char* key, const std::optional<T>& v)
{
    if (v)
        j[key] = *v;
}

template <typename T>
std::optional<T> take(const Json& j, const char* key)
{
    if (!j.contains(key))
        return std::nullopt;
    return j.at(key).get<T>();
}

} // namespace

Json to_json(const Witness& w)
{
    Json j;
    j["kind"] = to_string(w.kind);
    j["word"] = w.word;
    put(j, "event", w.event);
    put(j, "sup_state", w.sup_state);
    put(j, "plant_state", w.plant_state);
    put(j, "plant_target", w.plant_target);
    if (!w.pair_path.empty())
        j["pair_path"] = pairs(w.pair_path);
    put(j, "condition", w.condition);
    j["detail"] = w.detail;
    return j;
}

Json to_json(const Verdict& v)
{
    Json j;
    j["notion"] = to_string(v.notion);
    j["status"] = to_string(v.status);
    if (v.witness)
        j["witness"] = to_json(*v.witness);
    put(j, "reason", v.reason);
    if (!v.relation.empty())
        j["relation"] = pairs(v.relation);
    if (!v.embedding.empty())
        j["embedding"] = pairs(v.embedding);
    j["time_ms"] = v.time_ms;
    return j;
}

Verdict verdict_from_json(const Json& j)
{
    try {
        Verdict v;
        auto n = parse_notion(j.at("notion").get<std::string>());
        auto st = parse_status(j.at("status").get<std::string>());
        if (!n || !st)
            throw Error("verdict JSON: unknown notion or status");
        v.notion = *n;
        v.status = *st;
        if (j.contains("witness")) {
            const Json& wj = j.at("witness");
            Witness w;
            auto kind = parse_witness_kind(wj.at("kind").get<std::string>());
            if (!kind)
                throw Error("verdict JSON: unknown witness kind");
            w.kind = *kind;
            w.word = wj.at("word").get<std::vector<std::string>>();
            w.event = take<std::string>(wj, "event");
            w.sup_state = take<std::string>(wj, "sup_state");
            w.plant_state = take<std::string>(wj, "plant_state");
            w.plant_target = take<std::string>(wj, "plant_target");
            if (wj.contains("pair_path"))
                w.pair_path = pairs_from(wj.at("pair_path"));
            w.condition = take<int>(wj, "condition");
            w.detail = wj.value("detail", "");
            v.witness = std::move(w);
        }
        v.reason = take<std::string>(j, "reason");
        if (j.contains("relation"))
            v.relation = pairs_from(j.at("relation"));
        if (j.contains("embedding"))
            v.embedding = pairs_from(j.at("embedding"));
        v.time_ms = j.value("time_ms", 0.0);
        return v;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("verdict JSON: ") + e.what());
    }
}

Json to_json(const ContextProfile& c)
{
    return {{"s_deterministic", c.s_deterministic},
            {"p_deterministic", c.p_deterministic},
            {"subautomaton", c.subautomaton},
            {"language_inclusion", c.language_inclusion},
            {"alphabets_equal", c.alphabets_equal}};
}

Json to_json(const NotionMatrix& m)
{
    Json j;
    j["supervised"] = m.supervised;
    j["context"] = to_json(m.context);
    Json vs = Json::object();
    for (Notion n : kAllNotions)
        if (auto it = m.verdicts.find(n); it != m.verdicts.end())
            vs[std::string(to_string(n))] = to_json(it->second);
    j["verdicts"] = vs;
    return j;
}

Json to_json(const TheoremReport& r)
{
    Json j;
    j["theorem"] = r.theorem;
    j["context"] = theorem_context(r.theorem);
    j["instances"] = r.instances;
    Json rels = Json::array();
    for (const auto& t : r.relations)
        rels.push_back({{"relation", t.relation.name()},
                        {"checked", t.checked},
                        {"antecedent_held", t.antecedent_held},
                        {"consequent_held", t.consequent_held},
                        {"violations", t.violations}});
    j["relations"] = rels;
    Json vs = Json::array();
    for (const auto& v : r.violations)
        vs.push_back({{"index", v.index},
                      {"relation", v.relation},
                      {"verdicts", v.verdicts},
                      {"supervisor", v.supervisor_aut},
                      {"plant", v.plant_aut}});
    j["violations"] = vs;
    j["witnesses"] = {{"checked", r.witnesses_checked},
                      {"confirmed", r.witnesses_confirmed},
                      {"inconclusive", r.witnesses_inconclusive},
                      {"failures", r.witness_failures}};
    j["ok"] = r.ok();
    return j;
}

Json to_json(const CorpusReport& r)
{
    Json entries = Json::array();
    for (const auto& e : r.entries) {
        Json ej;
        ej["id"] = e.id;
        ej["mode"] = e.supervised ? "supervised" : "direct";
        ej["passed"] = e.passed();
        ej["compared"] = e.compared;
        if (e.error)
            ej["error"] = *e.error;
        Json ms = Json::array();
        for (const auto& m : e.mismatches)
            ms.push_back({{"notion", to_string(m.notion)},
                          {"expected", to_string(m.expected)},
                          {"got", to_json(m.got)}});
        ej["mismatches"] = ms;
        if (e.matrix)
            ej["matrix"] = to_json(*e.matrix);
        entries.push_back(ej);
    }
    return {{"passed", r.passed()}, {"compared", r.compared()}, {"mismatches", r.mismatches()}, {"entries", entries}};
}

Json to_json(const std::vector<Separation>& seps)
{
    Json a = Json::array();
    for (const auto& s : seps)
        a.push_back({{"theorem", s.claim.theorem},
                     {"antecedent", to_string(s.claim.antecedent)},
                     {"consequent", to_string(s.claim.consequent)},
                     {"entry", s.claim.entry},
                     {"separated", s.separated},
                     {"detail", s.detail}});
    return a;
}

} // namespace ctrlcheck
