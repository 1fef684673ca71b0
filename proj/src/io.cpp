#include "rrzero/io.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "rrzero/version.hpp"

namespace rrzero {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw InputError(path + ": " + msg);
}

void require_object(const json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) fail(path + "." + key, "unknown field");
    }
}

const json* find(const json& j, const std::string& key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

long long get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long long>();
}

bool get_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected a boolean");
    return j.get<bool>();
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

std::vector<long long> get_int_vector(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of integers");
    std::vector<long long> v;
    for (size_t i = 0; i < j.size(); ++i) v.push_back(get_int(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

std::vector<DeclaredTag> parse_tags(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of tag declarations");
    std::vector<DeclaredTag> tags;
    for (size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        require_object(j[i], p, {"tag", "value", "justification"});
        const json* name = find(j[i], "tag");
        const json* value = find(j[i], "value");
        if (!name || !value) fail(p, "tag declarations need 'tag' and 'value'");
        std::optional<Tag> tag = tag_from_name(get_string(*name, p + ".tag"));
        if (!tag) fail(p + ".tag", "unknown tag '" + get_string(*name, p + ".tag") + "'");
        DeclaredTag d{*tag, get_bool(*value, p + ".value"), ""};
        if (const json* just = find(j[i], "justification"))
            d.justification = get_string(*just, p + ".justification");
        tags.push_back(std::move(d));
    }
    return tags;
}

IntMatrix parse_matrix(const json& j, const std::string& path, int rank) {
    if (!j.is_array() || static_cast<int>(j.size()) != rank)
        fail(path, "expected a " + std::to_string(rank) + "x" + std::to_string(rank) + " matrix");
    IntMatrix m(rank);
    for (int i = 0; i < rank; ++i) {
        std::vector<long long> row = get_int_vector(j[i], path + "[" + std::to_string(i) + "]");
        if (static_cast<int>(row.size()) != rank)
            fail(path + "[" + std::to_string(i) + "]", "wrong row length");
        for (int c = 0; c < rank; ++c) m.at(i, c) = row[c];
    }
    return m;
}

FiniteGroupTable parse_finite(const json& j, const std::string& path);

SemidirectProductGroup parse_semidirect(const json& j, const std::string& path) {
    require_object(j, path, {"type", "label", "rank", "acting", "action", "generator_action", "tags"});
    const json* rank_j = find(j, "rank");
    const json* acting_j = find(j, "acting");
    if (!rank_j || !acting_j) fail(path, "semidirect nodes need 'rank' and 'acting'");
    int rank = static_cast<int>(get_int(*rank_j, path + ".rank"));
    FiniteGroupTable acting = parse_finite(*acting_j, path + ".acting");
    std::vector<IntMatrix> action;
    const json* action_j = find(j, "action");
    const json* gen_j = find(j, "generator_action");
    if (action_j && gen_j) fail(path, "give either 'action' or 'generator_action', not both");
    if (action_j) {
        if (!action_j->is_array() || static_cast<int>(action_j->size()) != acting.order())
            fail(path + ".action", "need one matrix per acting-group element");
        for (int h = 0; h < acting.order(); ++h)
            action.push_back(
                parse_matrix((*action_j)[h], path + ".action[" + std::to_string(h) + "]", rank));
    } else if (gen_j) {
        // powers of one matrix; the acting group must be cyclic with
        // element i = generator^i, which is how finite_cyclic enumerates
        if (!(acting == FiniteGroupTable::cyclic(acting.order())))
            fail(path + ".generator_action", "'generator_action' requires a 'finite_cyclic' acting group");
        IntMatrix gen = parse_matrix(*gen_j, path + ".generator_action", rank);
        IntMatrix power = IntMatrix::identity(rank);
        for (int h = 0; h < acting.order(); ++h) {
            action.push_back(power);
            power = power * gen;
        }
    } else {
        fail(path, "semidirect nodes need 'action' or 'generator_action'");
    }
    try {
        return SemidirectProductGroup(rank, std::move(acting), std::move(action));
    } catch (const InputError& e) {
        fail(path, e.what());
    }
}

FiniteGroupTable parse_finite(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected a finite-group node");
    const json* type = find(j, "type");
    if (!type) fail(path, "missing 'type'");
    std::string t = get_string(*type, path + ".type");
    if (t == "finite_cyclic") {
        require_object(j, path, {"type", "label", "order", "tags"});
        const json* order = find(j, "order");
        if (!order) fail(path, "finite_cyclic needs 'order'");
        return FiniteGroupTable::cyclic(static_cast<int>(get_int(*order, path + ".order")));
    }
    if (t == "finite_table") {
        require_object(j, path, {"type", "label", "table", "tags"});
        const json* table = find(j, "table");
        if (!table || !table->is_array()) fail(path, "finite_table needs a 'table' array");
        std::vector<std::vector<int>> rows;
        for (size_t i = 0; i < table->size(); ++i) {
            std::vector<long long> row =
                get_int_vector((*table)[i], path + ".table[" + std::to_string(i) + "]");
            rows.emplace_back(row.begin(), row.end());
        }
        try {
            return FiniteGroupTable::from_table(rows);
        } catch (const InputError& e) {
            fail(path + ".table", e.what());
        }
    }
    fail(path + ".type", "expected a finite-group node, got '" + t + "'");
}

DescPtr parse_node(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected a group node object");
    const json* type = find(j, "type");
    if (!type) fail(path, "missing 'type'");
    const std::string t = get_string(*type, path + ".type");
    std::string label;
    if (const json* l = find(j, "label")) label = get_string(*l, path + ".label");
    std::vector<DeclaredTag> tags;
    if (const json* tg = find(j, "tags")) tags = parse_tags(*tg, path + ".tags");

    if (t == "abelian") {
        require_object(j, path, {"type", "label", "free_rank", "torsion", "tags"});
        const json* rank = find(j, "free_rank");
        if (!rank) fail(path, "abelian nodes need 'free_rank'");
        std::vector<long long> torsion;
        if (const json* tor = find(j, "torsion")) torsion = get_int_vector(*tor, path + ".torsion");
        try {
            return make_description(
                label, FGAbelianGroup::make(static_cast<int>(get_int(*rank, path + ".free_rank")), torsion),
                std::move(tags));
        } catch (const InputError& e) {
            fail(path, e.what());
        }
    }
    if (t == "finite_cyclic" || t == "finite_table")
        return make_description(label, parse_finite(j, path), std::move(tags));
    if (t == "semidirect")
        return make_description(label, parse_semidirect(j, path), std::move(tags));
    if (t == "extension") {
        require_object(j, path, {"type", "label", "normal", "quotient", "realization", "tags"});
        const json* normal = find(j, "normal");
        const json* quotient = find(j, "quotient");
        if (!normal || !quotient) fail(path, "extension nodes need 'normal' and 'quotient'");
        ExtensionNode node;
        node.normal = parse_node(*normal, path + ".normal");
        node.quotient = parse_node(*quotient, path + ".quotient");
        if (const json* real = find(j, "realization"))
            node.realization = parse_semidirect(*real, path + ".realization");
        try {
            return make_description(label, std::move(node), std::move(tags));
        } catch (const InputError& e) {
            fail(path, e.what());
        }
    }
    if (t == "union") {
        require_object(j, path, {"type", "label", "stages", "stage_tags", "hirsch_unbounded", "tags"});
        const json* stages = find(j, "stages");
        if (!stages || !stages->is_array() || stages->empty())
            fail(path, "union nodes need a non-empty 'stages' array");
        UnionNode node;
        for (size_t i = 0; i < stages->size(); ++i)
            node.stages.push_back(parse_node((*stages)[i], path + ".stages[" + std::to_string(i) + "]"));
        if (const json* st = find(j, "stage_tags"))
            node.stage_tags = parse_tags(*st, path + ".stage_tags");
        if (const json* hu = find(j, "hirsch_unbounded"))
            node.hirsch_unbounded = get_bool(*hu, path + ".hirsch_unbounded");
        return make_description(label, std::move(node), std::move(tags));
    }
    fail(path + ".type", "unsupported node type '" + t + "'");
}

AbelianElement parse_element(const json& j, const std::string& path, const FGAbelianGroup& g) {
    require_object(j, path, {"free", "torsion"});
    std::vector<long long> free;
    if (const json* f = find(j, "free")) free = get_int_vector(*f, path + ".free");
    std::vector<long long> torsion;
    if (const json* t = find(j, "torsion")) torsion = get_int_vector(*t, path + ".torsion");
    if (torsion.empty()) torsion.assign(g.torsion_factors().size(), 0);
    try {
        return g.element(std::move(free), std::move(torsion));
    } catch (const InputError& e) {
        fail(path, e.what());
    }
}

Rational parse_rational(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_array() || j.size() != 2) fail(path, "expected [numerator, denominator]");
    return Rational(get_int(j[0], path + "[0]"), get_int(j[1], path + "[1]"));
}

LatticeAlgebraElement parse_algebra_element(const json& j, const std::string& path,
                                            const AbelianOps& ops) {
    if (!j.is_array()) fail(path, "expected an array of terms");
    LatticeAlgebraElement x = LatticeAlgebraElement::zero(ops);
    for (size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        require_object(j[i], p, {"element", "coeff"});
        const json* el = find(j[i], "element");
        const json* co = find(j[i], "coeff");
        if (!el || !co) fail(p, "terms need 'element' and 'coeff'");
        AbelianElement g = parse_element(*el, p + ".element", ops.group());
        require_object(*co, p + ".coeff", {"re", "im"});
        Rational re, im;
        if (const json* r = find(*co, "re")) re = parse_rational(*r, p + ".coeff.re");
        if (const json* ij = find(*co, "im")) im = parse_rational(*ij, p + ".coeff.im");
        x.add_term(g, {re, im});
    }
    return x;
}

}  // namespace

ParsedDescription parse_description_json(const json& doc, const std::string& origin) {
    require_object(doc, origin, {"version", "group", "declarations", "analysis"});
    const json* version = find(doc, "version");
    if (!version) fail(origin, "missing 'version'");
    if (get_int(*version, origin + ".version") != kDescriptionFileVersion)
        fail(origin + ".version", "unsupported description version (expected " +
                                      std::to_string(kDescriptionFileVersion) + ")");
    const json* group = find(doc, "group");
    if (!group) fail(origin, "missing 'group'");

    ParsedDescription out;
    DescPtr parsed = parse_node(*group, origin + ".group");

    if (const json* decl = find(doc, "declarations")) {
        require_object(*decl, origin + ".declarations", {"tags", "witness"});
        auto mutated = std::make_shared<GroupDescription>(*parsed);
        if (const json* tags = find(*decl, "tags")) {
            auto extra = parse_tags(*tags, origin + ".declarations.tags");
            mutated->declared.insert(mutated->declared.end(), extra.begin(), extra.end());
        }
        if (const json* witness = find(*decl, "witness"))
            mutated->declared_witness = get_int_vector(*witness, origin + ".declarations.witness");
        parsed = mutated;
    }
    out.description = parsed;

    if (const json* analysis = find(doc, "analysis")) {
        require_object(*analysis, origin + ".analysis", {"oscillation", "series"});
        if (const json* osc = find(*analysis, "oscillation")) {
            const std::string p = origin + ".analysis.oscillation";
            require_object(*osc, p, {"beta_diagonal", "matrix"});
            const FGAbelianGroup* base = parsed->as_abelian();
            if (!base)
                fail(p, "oscillation requests need an abelian group (a dual with torus components)");
            if (const json* bd = find(*osc, "beta_diagonal")) {
                if (!bd->is_array() || bd->empty()) fail(p + ".beta_diagonal", "expected entries");
                std::vector<AbelianElement> entries;
                for (size_t i = 0; i < bd->size(); ++i)
                    entries.push_back(parse_element(
                        (*bd)[i], p + ".beta_diagonal[" + std::to_string(i) + "]", *base));
                out.beta_diagonal = std::move(entries);
            }
            if (const json* mat = find(*osc, "matrix")) {
                if (!mat->is_array() || mat->empty()) fail(p + ".matrix", "expected a square matrix");
                const int k = static_cast<int>(mat->size());
                AbelianOps ops(*base);
                LatticeAlgebraMatrix m(ops, k);
                for (int i = 0; i < k; ++i) {
                    const json& row = (*mat)[i];
                    if (!row.is_array() || static_cast<int>(row.size()) != k)
                        fail(p + ".matrix[" + std::to_string(i) + "]", "wrong row length");
                    for (int j = 0; j < k; ++j)
                        m.at(i, j) = parse_algebra_element(
                            row[j], p + ".matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                            ops);
                }
                out.matrix = std::move(m);
            }
            if (!out.beta_diagonal && !out.matrix)
                fail(p, "oscillation requests need 'beta_diagonal' or 'matrix'");
            if (out.beta_diagonal && out.matrix)
                fail(p, "give one of 'beta_diagonal' or 'matrix', not both");
        }
        if (const json* series = find(*analysis, "series")) {
            const std::string p = origin + ".analysis.series";
            if (!series->is_array() || series->empty()) fail(p, "expected a non-empty label array");
            NormalSeries s;
            for (size_t i = 0; i < series->size(); ++i) {
                std::string label = get_string((*series)[i], p + "[" + std::to_string(i) + "]");
                if (label == "LF")
                    s.labels.push_back(QuotientLabel::LocallyFinite);
                else if (label == "Ab")
                    s.labels.push_back(QuotientLabel::Abelian);
                else
                    fail(p + "[" + std::to_string(i) + "]", "labels are 'LF' or 'Ab'");
            }
            out.series = std::move(s);
        }
    }
    out.echo = doc;
    return out;
}

ParsedDescription parse_description_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": invalid JSON: " + e.what());
    }
    return parse_description_json(doc, path);
}

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

json tags_to_json(const PropertyTagSet& tags) {
    json out = json::object();
    for (int i = 0; i < kTagCount; ++i) {
        Tag t = static_cast<Tag>(i);
        const TagState& s = tags.state(t);
        if (s.value == TriState::Unknown) continue;
        out[tag_name(t)] = json{{"value", s.value == TriState::True},
                                {"provenance", s.provenance}};
    }
    return out;
}

json gridspec_to_json(const GridSpec& spec) {
    return json{{"grid", spec.grid_per_axis},
                {"refine", spec.refine_levels},
                {"zoom", spec.zoom},
                {"components_cap", spec.component_cap},
                {"sample_components", spec.sample_components},
                {"seed", spec.seed}};
}

json estimate_to_json(const OscillationEstimate& est) {
    json components = json::array();
    for (const ComponentStats& c : est.components)
        components.push_back(json{{"torsion_char", c.torsion_char},
                                  {"max_norm", c.max_norm},
                                  {"min_norm", c.min_norm}});
    return json{{"omega_lower", est.omega_lower},
                {"omega_upper", est.omega_upper},
                {"method", est.method == OscMethod::ExactDiagonal ? "exact-diagonal" : "sampled"},
                {"grid", gridspec_to_json(est.grid)},
                {"hermitian_path", est.hermitian_path},
                {"component_sampled", est.component_sampled},
                {"global_max_norm", est.global_max_norm},
                {"l1_bound", est.l1_bound},
                {"components", std::move(components)}};
}

json bracket_to_json(const DistanceBracket& bracket) {
    return json{{"lower", bracket.lower}, {"upper", bracket.upper}, {"exact", bracket.exact}};
}

namespace {
json rational_to_json(const Rational& r) { return json::array({r.num(), r.den()}); }
}  // namespace

json algebra_element_to_json(const LatticeAlgebraElement& x) {
    json terms = json::array();
    for (const auto& [g, c] : x.terms()) {
        json term{{"element", json{{"free", g.free_part}, {"torsion", g.torsion_part}}}};
        term["coeff"] = json{{"re", rational_to_json(c.re)}, {"im", rational_to_json(c.im)}};
        terms.push_back(std::move(term));
    }
    return terms;
}

json algebra_matrix_to_json(const LatticeAlgebraMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(algebra_element_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json audit_to_json(const AuditReport& report) {
    return json{{"name", report.name},
                {"trials", report.trials},
                {"seed", report.seed},
                {"failures", report.failures},
                {"ok", report.ok()}};
}

json certificate_to_json(const Verdict& verdict) {
    json trace = json::array();
    for (const RuleStep& s : verdict.trace)
        trace.push_back(json{{"rule_id", s.rule_id},
                             {"paper_anchor", s.paper_anchor},
                             {"premises", s.premises},
                             {"conclusion", s.conclusion}});
    json out{{"verdict", verdict_name(verdict.kind)},
             {"confidence", confidence_name(verdict.confidence)},
             {"rule_trace", std::move(trace)}};
    if (verdict.witness)
        out["witness"] = json{{"element", verdict.witness->vector}, {"route", verdict.witness->route}};
    else
        out["witness"] = nullptr;
    if (verdict.omega) {
        json stages = json::array();
        for (const StageOmega& s : verdict.omega->stages) {
            json st{{"stage", s.stage}, {"embedding_index", s.embedding_index}, {"exact", s.exact}};
            st["sampled"] = s.sampled ? json(*s.sampled) : json(nullptr);
            stages.push_back(std::move(st));
        }
        out["omega"] = json{{"exact", verdict.omega->exact},
                            {"sampled", verdict.omega->sampled ? json(*verdict.omega->sampled)
                                                               : json(nullptr)},
                            {"grid", gridspec_to_json(verdict.omega->grid)},
                            {"stages", std::move(stages)}};
    } else {
        out["omega"] = nullptr;
    }
    if (!verdict.note.empty()) out["note"] = verdict.note;
    return out;
}

// ---------------------------------------------------------------------------
// CLI
// ---------------------------------------------------------------------------

namespace {

struct CliOptions {
    std::string file;
    int grid = 64;
    int refine = 2;
    long long components_cap = 4096;
    bool sample_components = false;
    double tol = 1e-6;
    uint64_t seed = 1234577;
    int trials = 100;
    std::string out_path;
    std::string dump_surface;
    std::string labels;
    bool timings = false;
    bool serial = false;

    GridSpec grid_spec() const {
        GridSpec s;
        s.grid_per_axis = grid;
        s.refine_levels = refine;
        s.component_cap = components_cap;
        s.sample_components = sample_components;
        s.seed = seed;
        return s;
    }
    Exec exec() const { return serial ? Exec::Serial : Exec::Parallel; }

    json to_json(const std::string& command) const {
        json cfg{{"grid", grid},
                 {"refine", refine},
                 {"components_cap", components_cap},
                 {"sample_components", sample_components},
                 {"tol", tol},
                 {"seed", seed},
                 {"kernel", serial ? "serial" : "parallel"}};
        if (command == "embed-audit") cfg["trials"] = trials;
        return cfg;
    }
};

json make_report(const std::string& command, const CliOptions& opt, const ParsedDescription* input) {
    json report{{"tool", json{{"name", kToolName}, {"version", kToolVersion}}},
                {"command", command},
                {"config", opt.to_json(command)}};
    if (input)
        report["input"] = json{{"path", opt.file}, {"document", input->echo}};
    return report;
}

NormalSeries series_from_labels(const std::string& csv) {
    NormalSeries s;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "LF")
            s.labels.push_back(QuotientLabel::LocallyFinite);
        else if (item == "Ab")
            s.labels.push_back(QuotientLabel::Abelian);
        else
            throw InputError("--labels entries are 'LF' or 'Ab', got '" + item + "'");
    }
    if (s.labels.empty()) throw InputError("--labels is empty");
    return s;
}

json series_to_json(const NormalSeries& s) {
    json arr = json::array();
    for (QuotientLabel l : s.labels) arr.push_back(quotient_label_name(l));
    return arr;
}

void emit(const json& report, const CliOptions& opt, std::ostream& out) {
    if (!opt.out_path.empty()) {
        std::ofstream f(opt.out_path);
        if (!f) throw InputError(opt.out_path + ": cannot write report");
        f << report.dump(2) << "\n";
    } else {
        out << report.dump(2) << "\n";
    }
}

int run_analyze(const CliOptions& opt, std::ostream& out) {
    ParsedDescription input = parse_description_file(opt.file);
    AnalyzeConfig config;
    config.grid = opt.grid_spec();
    config.exec = opt.exec();
    auto started = std::chrono::steady_clock::now();
    PropertyTagSet tags = derive_tags(*input.description);
    Verdict verdict = rr0_obstruction_analyze(*input.description, config);
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                             started);
    json report = make_report("analyze", opt, &input);
    report["results"] =
        json{{"verdict", verdict_name(verdict.kind)},
             {"tags", tags_to_json(tags)},
             {"certificate", certificate_to_json(verdict)}};
    if (opt.timings) report["timings_ms"] = json{{"analyze", elapsed.count()}};
    emit(report, opt, out);
    return 0;
}

int run_hirsch(const CliOptions& opt, std::ostream& out) {
    ParsedDescription input = parse_description_file(opt.file);
    HirschLength h = hirsch_length(*input.description);
    json report = make_report("hirsch", opt, &input);
    report["results"] = json{
        {"hirsch_length", json{{"finite", !h.is_infinite},
                               {"value", h.is_infinite ? json("infinity") : json(h.value)}}}};
    emit(report, opt, out);
    return 0;
}

int run_oscillation(const CliOptions& opt, std::ostream& out) {
    ParsedDescription input = parse_description_file(opt.file);
    const FGAbelianGroup* base = input.description->as_abelian();
    if (!base) throw UnsupportedError("oscillation runs need an abelian description");
    if (!input.beta_diagonal && !input.matrix)
        throw UnsupportedError("description file carries no analysis.oscillation payload");
    DualDescription dual(*base);
    GridSpec spec = opt.grid_spec();

    LatticeAlgebraMatrix m = input.matrix
                                 ? *input.matrix
                                 : beta_diagonal_matrix(*base, *input.beta_diagonal);
    json results;
    results["element"] = algebra_matrix_to_json(m);
    if (input.beta_diagonal)
        results["exact"] = estimate_to_json(oscillation_exact_beta_diagonal(*input.beta_diagonal, dual));
    else
        results["exact"] = nullptr;

    auto started = std::chrono::steady_clock::now();
    Surface surface;
    OscillationEstimate sampled = oscillation_sampled(m, dual, spec, opt.exec(),
                                                      opt.dump_surface.empty() ? nullptr : &surface);
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                             started);
    results["sampled"] = estimate_to_json(sampled);
    results["distance_bracket"] =
        bracket_to_json(finite_spectrum_distance_bracket(m, dual, spec, opt.exec()));

    if (!opt.dump_surface.empty()) {
        std::ofstream csv(opt.dump_surface);
        if (!csv) throw InputError(opt.dump_surface + ": cannot write surface");
        write_surface_csv(csv, surface, dual.torus_dim());
        results["surface_csv"] = opt.dump_surface;
    }
    json report = make_report("oscillation", opt, &input);
    report["results"] = std::move(results);
    if (opt.timings) report["timings_ms"] = json{{"sampled", elapsed.count()}};
    emit(report, opt, out);
    return 0;
}

int run_embed_audit(const CliOptions& opt, std::ostream& out) {
    ParsedDescription input = parse_description_file(opt.file);
    LiftTable lt = build_lift_table(*input.description);
    auto started = std::chrono::steady_clock::now();
    AuditReport hom = verify_homomorphism(lt, opt.trials, opt.seed);
    AuditReport trace = verify_trace_identity(lt, opt.trials, opt.seed);
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                             started);
    json lifts = json::array();
    for (const SemidirectElement& g : lt.lifts) lifts.push_back(g.str());
    json report = make_report("embed-audit", opt, &input);
    report["results"] = json{{"embedding_index", lt.index()},
                             {"lifts", std::move(lifts)},
                             {"homomorphism", audit_to_json(hom)},
                             {"trace_identity", audit_to_json(trace)}};
    if (opt.timings) report["timings_ms"] = json{{"audits", elapsed.count()}};
    emit(report, opt, out);
    return hom.ok() && trace.ok() ? 0 : 1;
}

int run_series_normalize(const CliOptions& opt, std::ostream& out) {
    NormalSeries series;
    std::optional<ParsedDescription> input;
    if (!opt.labels.empty()) {
        series = series_from_labels(opt.labels);
    } else {
        input = parse_description_file(opt.file);
        if (!input->series)
            throw UnsupportedError("description file carries no analysis.series payload");
        series = *input->series;
    }
    NormalSeries normalized = normalize_normal_series(series);
    json report = make_report("series-normalize", opt, input ? &*input : nullptr);
    report["results"] =
        json{{"input", series_to_json(series)}, {"normalized", series_to_json(normalized)}};
    emit(report, opt, out);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"real-rank-zero obstruction certificates for group C*-algebras"};
    app.require_subcommand(1);

    CliOptions opt;
    auto add_common = [&](CLI::App* sub, bool needs_file) {
        if (needs_file)
            sub->add_option("file", opt.file, "group description file (.grp JSON)")->required();
        sub->add_option("--grid", opt.grid, "grid points per torus axis")->envname("RRZERO_GRID");
        sub->add_option("--refine", opt.refine, "local refinement levels")->envname("RRZERO_REFINE");
        sub->add_option("--components-cap", opt.components_cap,
                        "max dual components to enumerate")->envname("RRZERO_COMPONENTS_CAP");
        sub->add_flag("--sample-components", opt.sample_components,
                      "sample components when over the cap")->envname("RRZERO_SAMPLE_COMPONENTS");
        sub->add_option("--tol", opt.tol, "numeric tolerance")->envname("RRZERO_TOL");
        sub->add_option("--seed", opt.seed, "seed for randomized audits and sampling")
            ->envname("RRZERO_SEED");
        sub->add_option("--out", opt.out_path, "write the JSON report here instead of stdout");
        sub->add_flag("--timings", opt.timings, "include wall-clock timings in the report");
        sub->add_flag("--serial", opt.serial, "use the serial reference kernel");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "derive an obstruction verdict");
    add_common(analyze, true);
    CLI::App* hirsch = app.add_subcommand("hirsch", "Hirsch length of the description");
    add_common(hirsch, true);
    CLI::App* oscillation = app.add_subcommand("oscillation", "oscillation of a described element");
    add_common(oscillation, true);
    oscillation->add_option("--dump-surface", opt.dump_surface, "write the norm surface CSV here");
    CLI::App* embed = app.add_subcommand("embed-audit", "randomized embedding audits");
    add_common(embed, true);
    embed->add_option("--trials", opt.trials, "number of random trials")->envname("RRZERO_TRIALS");
    CLI::App* series = app.add_subcommand("series-normalize", "normalize a normal series");
    series->add_option("file", opt.file, "group description file (.grp JSON)");
    series->add_option("--labels", opt.labels, "inline series, e.g. LF,LF,Ab");
    series->add_option("--out", opt.out_path, "write the JSON report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help and friends
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (analyze->parsed()) return run_analyze(opt, out);
        if (hirsch->parsed()) return run_hirsch(opt, out);
        if (oscillation->parsed()) return run_oscillation(opt, out);
        if (embed->parsed()) return run_embed_audit(opt, out);
        if (series->parsed()) {
            if (opt.labels.empty() && opt.file.empty())
                throw InputError("series-normalize needs a file or --labels");
            return run_series_normalize(opt, out);
        }
        err << "error: no subcommand\n";
        return 2;
    } catch (const UnsupportedError& e) {
        err << "unsupported: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace rrzero
