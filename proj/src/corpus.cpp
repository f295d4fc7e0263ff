#include "mathworld/corpus.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mathworld/errors.hpp"
#include "mathworld/lf.hpp"

namespace mathworld {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

[[noreturn]] void bail(const std::string& where, const std::string& what) {
    throw ValidationError(where + ": " + what);
}

Quantity quantity_from_text(const std::string& text, const std::string& where) {
    if (is_variable_token(text)) return Quantity::var(text);
    if (!Rational::looks_rational(text)) {
        bail(where, "quantity '" + text + "' is neither a number nor a variable");
    }
    try {
        return Quantity::known(Rational::parse(text));
    } catch (const ValidationError& e) {
        bail(where, e.what());
    }
}

std::string field_string(const json& j, const char* field, const std::string& where) {
    if (!j.contains(field)) bail(where, std::string("missing field '") + field + "'");
    if (!j.at(field).is_string()) bail(where, std::string("field '") + field + "' must be a string");
    return j.at(field).get<std::string>();
}

int field_int(const json& j, const char* field, const std::string& where) {
    if (!j.contains(field)) bail(where, std::string("missing field '") + field + "'");
    if (!j.at(field).is_number_integer()) {
        bail(where, std::string("field '") + field + "' must be an integer");
    }
    return j.at(field).get<int>();
}

json quantity_to_json(const Quantity& q) { return q.to_string(); }

json graph_to_json(const GraphDocument& doc) {
    json nodes = json::array();
    for (const Container& c : doc.model.containers()) {
        json meta;
        meta["label"] = c.structure.label;
        meta["entity"] = c.structure.entity;
        if (c.structure.attribute) meta["attribute"] = *c.structure.attribute;
        if (c.structure.unit) meta["unit"] = *c.structure.unit;
        meta["quantity"] = quantity_to_json(c.quantity);
        nodes.push_back({{"id", c.id}, {"metadata", meta}});
    }
    json edges = json::array();
    for (const Relation& r : doc.model.relations()) {
        json meta;
        meta["id"] = r.id;
        meta["type"] = relation_type_name(r.type());
        if (r.quantity) meta["quantity"] = quantity_to_json(*r.quantity);
        if (const auto* t = std::get_if<TransferKind>(&r.kind)) {
            if (t->recipient) meta["recipient"] = *t->recipient;
            if (t->sender) meta["sender"] = *t->sender;
        } else if (const auto* c = std::get_if<ComparisonKind>(&r.kind)) {
            meta["op"] = c->op == ComparisonOp::add ? "add" : "mul";
        }
        edges.push_back({{"source", r.source}, {"target", r.target}, {"metadata", meta}});
    }
    json metadata = json::object();
    if (doc.model.ref_var()) metadata["ref_var"] = *doc.model.ref_var();
    if (!doc.states.empty()) {
        json states = json::array();
        for (const StateSnapshot& s : doc.states) {
            json state;
            state["containers"] = s.containers;
            state["relations"] = s.relations;
            if (!s.quantity_overrides.empty()) {
                json overrides = json::object();
                for (const auto& [id, q] : s.quantity_overrides) {
                    overrides[std::to_string(id)] = quantity_to_json(q);
                }
                state["quantities"] = overrides;
            }
            states.push_back(state);
        }
        metadata["sentence_states"] = states;
    }
    return {{"nodes", nodes}, {"edges", edges}, {"metadata", metadata}};
}

GraphDocument graph_from_json(const json& g, const std::string& where) {
    if (!g.is_object()) bail(where, "graph must be an object");
    if (!g.contains("nodes") || !g.at("nodes").is_array()) {
        bail(where, "missing field 'nodes'");
    }
    if (!g.contains("edges") || !g.at("edges").is_array()) {
        bail(where, "missing field 'edges'");
    }

    std::vector<Container> nodes;
    std::vector<Relation> edges;

    int index = 0;
    for (const json& n : g.at("nodes")) {
        std::string ctx = where + ": node " + std::to_string(++index);
        Container c;
        c.id = field_int(n, "id", ctx);
        if (!n.contains("metadata")) bail(ctx, "missing field 'metadata'");
        const json& meta = n.at("metadata");
        c.structure.label = field_string(meta, "label", ctx);
        c.structure.entity = field_string(meta, "entity", ctx);
        if (meta.contains("attribute")) c.structure.attribute = field_string(meta, "attribute", ctx);
        if (meta.contains("unit")) c.structure.unit = field_string(meta, "unit", ctx);
        c.quantity = quantity_from_text(field_string(meta, "quantity", ctx), ctx);
        nodes.push_back(std::move(c));
    }
    index = 0;
    for (const json& e : g.at("edges")) {
        std::string ctx = where + ": edge " + std::to_string(++index);
        Relation r;
        r.source = field_int(e, "source", ctx);
        r.target = field_int(e, "target", ctx);
        if (!e.contains("metadata")) bail(ctx, "missing field 'metadata'");
        const json& meta = e.at("metadata");
        r.id = field_int(meta, "id", ctx);
        std::string type = field_string(meta, "type", ctx);
        if (type == "transfer") {
            TransferKind t;
            if (meta.contains("recipient")) t.recipient = field_string(meta, "recipient", ctx);
            if (meta.contains("sender")) t.sender = field_string(meta, "sender", ctx);
            r.kind = t;
        } else if (type == "rate") {
            r.kind = RateKind{};
        } else if (type == "comparison") {
            std::string op = field_string(meta, "op", ctx);
            if (op == "times") op = "mul";  // accepted alias
            if (op != "add" && op != "mul") bail(ctx, "field 'op' must be add, mul or times");
            r.kind = ComparisonKind{op == "add" ? ComparisonOp::add : ComparisonOp::mul};
        } else if (type == "part-whole") {
            r.kind = PartWholeKind{};
        } else {
            bail(ctx, "unknown relation type '" + type + "'");
        }
        if (meta.contains("quantity")) {
            r.quantity = quantity_from_text(field_string(meta, "quantity", ctx), ctx);
        }
        edges.push_back(std::move(r));
    }

    GraphDocument doc;
    // The shared id space interleaves containers and relations.
    std::size_t ni = 0, ei = 0;
    while (ni < nodes.size() || ei < edges.size()) {
        bool take_node = ei == edges.size() ||
                         (ni < nodes.size() && nodes[ni].id < edges[ei].id);
        try {
            if (take_node) {
                doc.model.insert_container(nodes[ni++]);
            } else {
                doc.model.insert_relation(edges[ei++]);
            }
        } catch (const ValidationError& e) {
            bail(where, e.what());
        }
    }

    if (g.contains("metadata")) {
        const json& meta = g.at("metadata");
        if (meta.contains("ref_var")) {
            doc.model.set_ref_var(field_string(meta, "ref_var", where + ": metadata"));
        }
        if (meta.contains("sentence_states")) {
            int si = 0;
            for (const json& s : meta.at("sentence_states")) {
                std::string ctx = where + ": sentence_state " + std::to_string(++si);
                StateSnapshot snap;
                if (!s.contains("containers") || !s.contains("relations")) {
                    bail(ctx, "missing field 'containers' or 'relations'");
                }
                snap.containers = s.at("containers").get<std::vector<int>>();
                snap.relations = s.at("relations").get<std::vector<int>>();
                if (s.contains("quantities")) {
                    for (const auto& [key, value] : s.at("quantities").items()) {
                        snap.quantity_overrides.emplace_back(
                            std::stoi(key),
                            quantity_from_text(value.get<std::string>(), ctx));
                    }
                }
                doc.states.push_back(std::move(snap));
            }
        }
    }

    auto problems = validate_model(doc.model);
    if (!problems.empty()) bail(where, problems.front());
    for (const StateSnapshot& s : doc.states) {
        for (int id : s.containers) {
            if (!doc.model.container(id)) {
                bail(where, "sentence state references unknown container " + std::to_string(id));
            }
        }
        for (int id : s.relations) {
            if (!doc.model.relation(id)) {
                bail(where, "sentence state references unknown relation " + std::to_string(id));
            }
        }
    }
    return doc;
}

json parse_json(const std::string& text, const std::string& where) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) bail(where, "invalid JSON");
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError(path + ": cannot write");
    out << text;
}

void check_version(const json& j, const std::string& where) {
    if (!j.contains("format_version")) bail(where, "missing field 'format_version'");
    if (j.at("format_version") != kFormatVersion) {
        bail(where, "unsupported format_version");
    }
}

}  // namespace

std::string graph_to_json_text(const GraphDocument& doc) {
    json file = {{"format_version", kFormatVersion}, {"graph", graph_to_json(doc)}};
    return file.dump(2) + "\n";
}

GraphDocument load_graph(const std::string& path) {
    json j = parse_json(read_file(path), path);
    check_version(j, path);
    if (!j.contains("graph")) bail(path, "missing field 'graph'");
    return graph_from_json(j.at("graph"), path);
}

void save_graph(const GraphDocument& doc, const std::string& path) {
    write_file(path, graph_to_json_text(doc));
}

std::vector<AnnotatedMSP> load_corpus(const std::string& path) {
    std::istringstream lines(read_file(path));
    std::vector<AnnotatedMSP> corpus;
    std::string line;
    int line_no = 0;
    std::map<std::string, bool> seen;
    while (std::getline(lines, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::string where = path + ": record " + std::to_string(line_no);
        json j = parse_json(line, where);
        check_version(j, where);

        AnnotatedMSP msp;
        msp.id = field_string(j, "id", where);
        where += " (id=" + msp.id + ")";
        if (seen.count(msp.id)) bail(where, "duplicate id");
        seen[msp.id] = true;
        msp.source_dataset = field_string(j, "source_dataset", where);
        if (!j.contains("sentences") || !j.at("sentences").is_array()) {
            bail(where, "missing field 'sentences'");
        }
        msp.sentences = j.at("sentences").get<std::vector<std::string>>();
        if (!j.contains("logical_forms") || !j.at("logical_forms").is_array()) {
            bail(where, "missing field 'logical_forms'");
        }
        std::vector<std::string> lf_texts =
            j.at("logical_forms").get<std::vector<std::string>>();
        if (msp.sentences.empty() || lf_texts.size() != msp.sentences.size()) {
            bail(where, "sentences and logical_forms must align and be nonempty");
        }
        for (const std::string& text : lf_texts) {
            try {
                msp.logical_forms.push_back(
                    parse_logical_form(text, ParseMode::strict).form);
            } catch (const ParseError& e) {
                bail(where, std::string("bad logical form: ") + e.what());
            }
        }
        if (j.contains("graph")) {
            GraphDocument doc = graph_from_json(j.at("graph"), where);
            msp.gold_graph = std::move(doc.model);
            msp.gold_states = std::move(doc.states);
            if (!msp.gold_states.empty() && msp.gold_states.size() != msp.sentences.size()) {
                bail(where, "sentence_states must align with sentences");
            }
        }
        if (j.contains("answer")) {
            try {
                msp.gold_answer = Rational::parse(field_string(j, "answer", where));
            } catch (const ValidationError&) {
                bail(where, "field 'answer' must be a number");
            }
        }
        corpus.push_back(std::move(msp));
    }
    return corpus;
}

void save_corpus(const std::vector<AnnotatedMSP>& corpus, const std::string& path) {
    std::string out;
    for (const AnnotatedMSP& msp : corpus) {
        json j;
        j["format_version"] = kFormatVersion;
        j["id"] = msp.id;
        j["source_dataset"] = msp.source_dataset;
        j["sentences"] = msp.sentences;
        json forms = json::array();
        for (const LogicalForm& lf : msp.logical_forms) {
            forms.push_back(serialize_logical_form(lf));
        }
        j["logical_forms"] = forms;
        if (msp.gold_graph) {
            GraphDocument doc{*msp.gold_graph, msp.gold_states};
            j["graph"] = graph_to_json(doc);
        }
        if (msp.gold_answer) j["answer"] = msp.gold_answer->to_string();
        out += j.dump() + "\n";
    }
    write_file(path, out);
}

const std::vector<LogicalForm>* Predictions::find(const std::string& id) const {
    for (const auto& [rid, forms] : records) {
        if (rid == id) return &forms;
    }
    return nullptr;
}

Predictions load_predictions(const std::string& path) {
    std::istringstream lines(read_file(path));
    Predictions preds;
    std::string line;

    std::optional<std::string> current_id;
    std::vector<std::string> groups{""};

    auto flush = [&]() {
        if (!current_id) return;
        if (preds.find(*current_id)) {
            throw ValidationError(path + ": duplicate prediction id '" + *current_id + "'");
        }
        std::vector<LogicalForm> forms;
        for (std::size_t i = 0; i < groups.size(); ++i) {
            LfParseResult r = parse_logical_form(groups[i], ParseMode::recover);
            for (const std::string& note : r.dropped) {
                preds.warnings.push_back(*current_id + ", sentence " + std::to_string(i + 1) +
                                         ": " + note);
            }
            forms.push_back(std::move(r.form));
        }
        preds.records.emplace_back(*current_id, std::move(forms));
        groups = {""};
    };

    while (std::getline(lines, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty() && line[0] == '#') {
            flush();
            std::string id = line.substr(1);
            std::size_t start = id.find_first_not_of(" \t");
            current_id = start == std::string::npos ? "" : id.substr(start);
            if (current_id->empty()) {
                throw ValidationError(path + ": record header without an id");
            }
            continue;
        }
        if (!current_id) {
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            throw ValidationError(path + ": logical forms before any '# <id>' header");
        }
        if (line == "---") {
            groups.push_back("");
        } else {
            groups.back() += line + "\n";
        }
    }
    flush();
    return preds;
}

void save_predictions(const Predictions& preds, const std::string& path) {
    std::string out;
    for (const auto& [id, forms] : preds.records) {
        out += "# " + id + "\n";
        for (std::size_t i = 0; i < forms.size(); ++i) {
            if (i) out += "---\n";
            std::string text = serialize_logical_form(forms[i]);
            if (!text.empty()) out += text + "\n";
        }
    }
    write_file(path, out);
}

}  // namespace mathworld
