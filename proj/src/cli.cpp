#include "neron/cli.hpp"

#include <cctype>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace neron {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void schema_fail(const std::string& path, const std::string& msg) {
    throw Error(ErrorCode::SCHEMA, path.empty() ? msg : path + ": " + msg);
}

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t index) {
    return path + "/" + std::to_string(index);
}

long long to_ll(const json& v, const std::string& path) {
    if (v.is_number_unsigned()) {
        unsigned long long u = v.get<unsigned long long>();
        if (u > static_cast<unsigned long long>(std::numeric_limits<long long>::max()))
            schema_fail(path, "integer out of range");
        return static_cast<long long>(u);
    }
    if (v.is_number_integer()) return v.get<long long>();
    schema_fail(path, "expected an integer");
}

// Accepts a JSON integer or a decimal string (for values beyond 64 bits).
Integer to_integer(const json& v, const std::string& path) {
    if (v.is_number_integer() || v.is_number_unsigned()) return Integer(v.dump());
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
        bool ok = s.size() > i;
        for (; ok && i < s.size(); ++i) ok = std::isdigit(static_cast<unsigned char>(s[i])) != 0;
        if (!ok) schema_fail(path, "expected an integer or a decimal string");
        return Integer(s);
    }
    schema_fail(path, "expected an integer");
}

bool to_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) schema_fail(path, "expected a boolean");
    return v.get<bool>();
}

const json& field(const json& obj, const std::string& path, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) schema_fail(at(path, key), "missing required field");
    return *it;
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys) known = known || it.key() == k;
        if (!known) schema_fail(at(path, it.key()), "unknown field");
    }
}

IntMatrix to_matrix(const json& v, std::size_t rows, std::size_t cols, const std::string& path) {
    if (!v.is_array() || v.size() != rows)
        schema_fail(path, "expected an array of " + std::to_string(rows) + " rows");
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = v[r];
        if (!row.is_array() || row.size() != cols)
            schema_fail(at(path, r), "expected an array of " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = to_integer(row[c], at(at(path, r), c));
    }
    return m;
}

std::size_t to_rank(const json& v, const std::string& path, const json& matrix_field,
                    const std::string& matrix_path) {
    long long rank = to_ll(v, path);
    if (rank < 1) schema_fail(path, "rank must be at least 1");
    if (!matrix_field.is_array() || matrix_field.size() != static_cast<std::size_t>(rank))
        schema_fail(matrix_path, "expected an array of " + std::to_string(rank) + " rows");
    return static_cast<std::size_t>(rank);
}

InputDocument parse_jacobian(const json& doc) {
    check_keys(doc, "", {"kind", "components", "sigma", "intersections", "genus", "hypothesis_ok"});

    const json& jc = field(doc, "", "components");
    if (!jc.is_array() || jc.empty()) schema_fail("/components", "expected a nonempty array");
    std::size_t n = jc.size();
    std::vector<GeomComponent> components;
    components.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& c = jc[i];
        const std::string path = at("/components", i);
        if (!c.is_object()) schema_fail(path, "expected an object with fields d and e");
        check_keys(c, path, {"d", "e"});
        GeomComponent g;
        g.d = to_integer(field(c, path, "d"), at(path, "d"));
        g.e = to_integer(field(c, path, "e"), at(path, "e"));
        if (g.d < 1) schema_fail(at(path, "d"), "multiplicity must be at least 1");
        if (g.e < 1) schema_fail(at(path, "e"), "multiplicity must be at least 1");
        components.push_back(std::move(g));
    }

    const json& js = field(doc, "", "sigma");
    if (!js.is_array() || js.size() != n)
        schema_fail("/sigma", "expected an array of " + std::to_string(n) + " component indices");
    std::vector<std::size_t> sigma(n);
    for (std::size_t i = 0; i < n; ++i) {
        long long v = to_ll(js[i], at("/sigma", i));
        if (v < 0 || v >= static_cast<long long>(n))
            schema_fail(at("/sigma", i), "component index out of range");
        sigma[i] = static_cast<std::size_t>(v);
    }

    IntMatrix inter = to_matrix(field(doc, "", "intersections"), n, n, "/intersections");

    std::optional<Integer> genus;
    if (auto it = doc.find("genus"); it != doc.end() && !it->is_null())
        genus = to_integer(*it, "/genus");

    bool hyp = to_bool(field(doc, "", "hypothesis_ok"), "/hypothesis_ok");

    return InputDocument{InputKind::jacobian,
                         SpecialFibre(std::move(components), std::move(sigma), std::move(inter),
                                      std::move(genus), hyp)};
}

InputDocument parse_torus(const json& doc) {
    check_keys(doc, "", {"kind", "rank", "sigma"});
    const json& js = field(doc, "", "sigma");
    std::size_t n = to_rank(field(doc, "", "rank"), "/rank", js, "/sigma");
    CharacterLattice x;
    x.rank = n;
    x.sigma = to_matrix(js, n, n, "/sigma");
    return InputDocument{InputKind::torus, std::move(x)};
}

InputDocument parse_semistable(const json& doc) {
    check_keys(doc, "", {"kind", "rank", "sigma_X", "sigma_M", "pairing"});
    const json& jx = field(doc, "", "sigma_X");
    std::size_t n = to_rank(field(doc, "", "rank"), "/rank", jx, "/sigma_X");
    UniformizationDatum u;
    u.rank = n;
    u.sigma_x = to_matrix(jx, n, n, "/sigma_X");
    u.sigma_m = to_matrix(field(doc, "", "sigma_M"), n, n, "/sigma_M");
    u.pairing = to_matrix(field(doc, "", "pairing"), n, n, "/pairing");
    return InputDocument{InputKind::semistable, std::move(u)};
}

// Codes that mean the computation contradicted itself on accepted input, as
// opposed to the input failing a documented precondition.
bool is_internal(ErrorCode code) {
    switch (code) {
        case ErrorCode::INCONSISTENT:
        case ErrorCode::EMBED_FAIL:
        case ErrorCode::INTEGRALITY:
        case ErrorCode::NOT_SUBLATTICE:
        case ErrorCode::DIMENSION_MISMATCH:
        case ErrorCode::NOT_STABLE:
        case ErrorCode::NOT_EXACT:
            return true;
        default:
            return false;
    }
}

void escalate_warnings(Report& rep) {
    if (!rep.options.strict || rep.warnings.empty()) return;
    for (auto& w : rep.warnings) rep.errors.push_back(w);
    rep.warnings.clear();
}

json integer_to_json(const Integer& v) {
    if (v.fits_slong_p()) return static_cast<long long>(v.get_si());
    return v.get_str();
}

json group_to_json(const FinAbGroup& g) {
    json j = json::object();
    j["free_rank"] = static_cast<long long>(g.free_rank());
    json factors = json::array();
    for (const Integer& f : g.invariant_factors()) factors.push_back(integer_to_json(f));
    j["invariant_factors"] = std::move(factors);
    j["name"] = g.to_string();
    return j;
}

json issues_to_json(const std::vector<ValidationIssue>& issues) {
    json arr = json::array();
    for (const auto& issue : issues) {
        json j = json::object();
        j["code"] = to_string(issue.code);
        j["detail"] = issue.detail;
        arr.push_back(std::move(j));
    }
    return arr;
}

json result_to_json(const Report& rep) {
    json j = json::object();
    if (rep.jacobian) {
        const JacobianReport& r = *rep.jacobian;
        j["geometric_group"] = group_to_json(r.geometric_group);
        j["rational_group"] = r.rational_group ? group_to_json(*r.rational_group) : json();
        j["base_group"] = group_to_json(r.base_group);
        j["mult_gcd"] = integer_to_json(r.mult_gcd);
        j["orbit_mult_gcd"] = integer_to_json(r.orbit_mult_gcd);
        j["n"] = integer_to_json(r.n);
        j["q"] = integer_to_json(r.q);
        j["quotient_order"] = integer_to_json(r.quotient_order);
        j["consistent"] = r.consistent ? json(*r.consistent) : json();
    } else if (rep.torus) {
        const TorusReport& r = *rep.torus;
        j["rank"] = static_cast<long long>(r.rank);
        j["action_order"] = integer_to_json(r.action_order);
        j["dual_group"] = group_to_json(r.dual_group);
        j["rational_group"] = group_to_json(r.rational_group);
        j["coinvariant_rank"] = static_cast<long long>(r.coinvariant_rank);
        j["dual_check"] = r.dual_check;
    } else if (rep.semistable) {
        const SemistableReport& r = *rep.semistable;
        j["action_order"] = integer_to_json(r.action_order);
        j["component_group"] = group_to_json(r.component_group);
        j["rational_group"] = group_to_json(r.rational_group);
        j["split_subgroup"] = group_to_json(r.split_subgroup);
        j["period_h1"] = group_to_json(r.period_h1);
        j["split"] = r.split;
        j["bounds_ok"] = r.bounds_ok;
    }
    return j;
}

FinAbGroup group_from_json(const json& v, const std::string& path) {
    if (!v.is_object()) schema_fail(path, "expected a group object");
    check_keys(v, path, {"free_rank", "invariant_factors", "name"});
    long long fr = to_ll(field(v, path, "free_rank"), at(path, "free_rank"));
    if (fr < 0) schema_fail(at(path, "free_rank"), "must be nonnegative");
    const json& jf = field(v, path, "invariant_factors");
    if (!jf.is_array()) schema_fail(at(path, "invariant_factors"), "expected an array");
    IntVec factors;
    factors.reserve(jf.size());
    for (std::size_t i = 0; i < jf.size(); ++i)
        factors.push_back(to_integer(jf[i], at(at(path, "invariant_factors"), i)));
    try {
        return FinAbGroup(static_cast<std::size_t>(fr), std::move(factors));
    } catch (const Error& e) {
        schema_fail(path, e.detail());
    }
}

std::vector<ValidationIssue> issues_from_json(const json& v, const std::string& path) {
    if (!v.is_array()) schema_fail(path, "expected an array");
    std::vector<ValidationIssue> issues;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const json& item = v[i];
        const std::string ipath = at(path, i);
        if (!item.is_object()) schema_fail(ipath, "expected an object");
        const json& jc = field(item, ipath, "code");
        if (!jc.is_string()) schema_fail(at(ipath, "code"), "expected a string");
        std::optional<ErrorCode> code = error_code_from_string(jc.get<std::string>());
        if (!code) schema_fail(at(ipath, "code"), "unknown error code");
        const json& jd = field(item, ipath, "detail");
        if (!jd.is_string()) schema_fail(at(ipath, "detail"), "expected a string");
        issues.push_back({*code, jd.get<std::string>()});
    }
    return issues;
}

std::string group_line(const FinAbGroup& g) { return g.to_string(); }

}  // namespace

const char* to_string(InputKind kind) {
    switch (kind) {
        case InputKind::jacobian: return "jacobian";
        case InputKind::torus: return "torus";
        case InputKind::semistable: return "semistable";
    }
    return "?";
}

std::optional<InputKind> input_kind_from_string(const std::string& s) {
    if (s == "jacobian") return InputKind::jacobian;
    if (s == "torus") return InputKind::torus;
    if (s == "semistable") return InputKind::semistable;
    return std::nullopt;
}

InputDocument parse_input(const std::string& text, std::optional<InputKind> expected) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::PARSE, e.what());
    }
    if (!doc.is_object()) schema_fail("", "expected a JSON object");

    const json& jk = field(doc, "", "kind");
    if (!jk.is_string()) schema_fail("/kind", "expected a string");
    std::optional<InputKind> kind = input_kind_from_string(jk.get<std::string>());
    if (!kind) schema_fail("/kind", "must be \"jacobian\", \"torus\" or \"semistable\"");
    if (expected && *kind != *expected)
        schema_fail("/kind", std::string("expected \"") + to_string(*expected) + "\"");

    switch (*kind) {
        case InputKind::jacobian: return parse_jacobian(doc);
        case InputKind::torus: return parse_torus(doc);
        case InputKind::semistable: return parse_semistable(doc);
    }
    schema_fail("/kind", "unreachable");
}

Report run(const InputDocument& doc, const Options& opts) {
    Report rep;
    rep.kind = doc.kind;
    rep.options = opts;
    try {
        switch (doc.kind) {
            case InputKind::jacobian: {
                const auto& f = std::get<SpecialFibre>(doc.payload);
                ValidationReport v = validate(f);
                rep.errors = std::move(v.errors);
                rep.warnings = std::move(v.warnings);
                escalate_warnings(rep);
                if (!rep.errors.empty()) break;
                JacobianReport jr = component_group_report(f, opts.with_oracle);
                if (jr.consistent && !*jr.consistent)
                    rep.internal_error = "exact sequence and invariants oracle disagree";
                rep.jacobian = std::move(jr);
                break;
            }
            case InputKind::torus: {
                rep.torus = analyze_torus(std::get<CharacterLattice>(doc.payload));
                break;
            }
            case InputKind::semistable: {
                const auto& u = std::get<UniformizationDatum>(doc.payload);
                ValidationReport v = validate(u);
                rep.errors = std::move(v.errors);
                rep.warnings = std::move(v.warnings);
                escalate_warnings(rep);
                if (!rep.errors.empty()) break;
                rep.semistable = analyze_semistable(u);
                break;
            }
        }
    } catch (const Error& e) {
        if (is_internal(e.code()))
            rep.internal_error = e.what();
        else
            rep.errors.push_back({e.code(), e.detail()});
    }
    return rep;
}

int exit_code(const Report& rep) {
    if (rep.internal_error) return 2;
    if (!rep.errors.empty()) return 1;
    return 0;
}

std::string to_json(const Report& rep) {
    json j = json::object();
    j["kind"] = to_string(rep.kind);
    j["exit_code"] = exit_code(rep);
    j["errors"] = issues_to_json(rep.errors);
    j["warnings"] = issues_to_json(rep.warnings);
    j["internal_error"] = rep.internal_error ? json(*rep.internal_error) : json();
    bool has_result = rep.jacobian || rep.torus || rep.semistable;
    j["result"] = has_result ? result_to_json(rep) : json();
    return j.dump(2);
}

std::string to_text(const Report& rep) {
    std::ostringstream out;
    out << "kind: " << to_string(rep.kind) << "\n";
    if (rep.internal_error)
        out << "status: internal inconsistency\n";
    else if (!rep.errors.empty())
        out << "status: validation failed\n";
    else
        out << "status: ok\n";
    for (const auto& e : rep.errors) out << "error " << to_string(e.code) << ": " << e.detail << "\n";
    for (const auto& w : rep.warnings)
        out << "warning " << to_string(w.code) << ": " << w.detail << "\n";
    if (rep.internal_error) out << "internal error: " << *rep.internal_error << "\n";

    if (rep.jacobian) {
        const JacobianReport& r = *rep.jacobian;
        out << "geometric component group: " << group_line(r.geometric_group) << "\n";
        out << "rational points: "
            << (r.rational_group ? group_line(*r.rational_group) : std::string("skipped")) << "\n";
        out << "base-level subgroup: " << group_line(r.base_group) << "\n";
        out << "multiplicity gcd: " << r.mult_gcd << "\n";
        out << "orbit multiplicity gcd: " << r.orbit_mult_gcd << "\n";
        out << "lifted class degree (n): " << r.n << "\n";
        out << "parity invariant (q): " << r.q << "\n";
        out << "cyclic quotient order: " << r.quotient_order << "\n";
        out << "cross-check: "
            << (r.consistent ? (*r.consistent ? "consistent" : "FAILED") : "skipped") << "\n";
    } else if (rep.torus) {
        const TorusReport& r = *rep.torus;
        out << "character rank: " << r.rank << "\n";
        out << "action order: " << r.action_order << "\n";
        out << "component group over the splitting field: " << group_line(r.dual_group) << "\n";
        out << "rational points: " << group_line(r.rational_group) << "\n";
        out << "coinvariant rank: " << r.coinvariant_rank << "\n";
        out << "dual identification: " << (r.dual_check ? "passed" : "FAILED") << "\n";
    } else if (rep.semistable) {
        const SemistableReport& r = *rep.semistable;
        out << "action order: " << r.action_order << "\n";
        out << "component group: " << group_line(r.component_group) << "\n";
        out << "rational points: " << group_line(r.rational_group) << "\n";
        out << "split-data subgroup: " << group_line(r.split_subgroup) << "\n";
        out << "period lattice cohomology: " << group_line(r.period_h1) << "\n";
        out << "split uniformization: " << (r.split ? "yes" : "no") << "\n";
        out << "order bounds: " << (r.bounds_ok ? "satisfied" : "FAILED") << "\n";
    }
    return out.str();
}

std::string render(const Report& rep) {
    return rep.options.format == "json" ? to_json(rep) : to_text(rep);
}

Report report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::PARSE, e.what());
    }
    if (!j.is_object()) schema_fail("", "expected a JSON object");
    check_keys(j, "", {"kind", "exit_code", "errors", "warnings", "internal_error", "result"});

    Report rep;
    const json& jk = field(j, "", "kind");
    if (!jk.is_string()) schema_fail("/kind", "expected a string");
    std::optional<InputKind> kind = input_kind_from_string(jk.get<std::string>());
    if (!kind) schema_fail("/kind", "unknown kind");
    rep.kind = *kind;

    to_ll(field(j, "", "exit_code"), "/exit_code");  // recomputed, only type-checked
    rep.errors = issues_from_json(field(j, "", "errors"), "/errors");
    rep.warnings = issues_from_json(field(j, "", "warnings"), "/warnings");

    const json& ji = field(j, "", "internal_error");
    if (ji.is_string())
        rep.internal_error = ji.get<std::string>();
    else if (!ji.is_null())
        schema_fail("/internal_error", "expected a string or null");

    const json& jr = field(j, "", "result");
    if (jr.is_null()) return rep;
    if (!jr.is_object()) schema_fail("/result", "expected an object or null");
    const std::string rpath = "/result";

    switch (rep.kind) {
        case InputKind::jacobian: {
            JacobianReport r;
            r.geometric_group = group_from_json(field(jr, rpath, "geometric_group"),
                                                at(rpath, "geometric_group"));
            const json& jrat = field(jr, rpath, "rational_group");
            if (!jrat.is_null()) r.rational_group = group_from_json(jrat, at(rpath, "rational_group"));
            r.base_group = group_from_json(field(jr, rpath, "base_group"), at(rpath, "base_group"));
            r.mult_gcd = to_integer(field(jr, rpath, "mult_gcd"), at(rpath, "mult_gcd"));
            r.orbit_mult_gcd =
                to_integer(field(jr, rpath, "orbit_mult_gcd"), at(rpath, "orbit_mult_gcd"));
            r.n = to_integer(field(jr, rpath, "n"), at(rpath, "n"));
            r.q = to_integer(field(jr, rpath, "q"), at(rpath, "q"));
            r.quotient_order =
                to_integer(field(jr, rpath, "quotient_order"), at(rpath, "quotient_order"));
            const json& jcons = field(jr, rpath, "consistent");
            if (!jcons.is_null()) r.consistent = to_bool(jcons, at(rpath, "consistent"));
            rep.jacobian = std::move(r);
            break;
        }
        case InputKind::torus: {
            TorusReport r;
            long long rank = to_ll(field(jr, rpath, "rank"), at(rpath, "rank"));
            if (rank < 0) schema_fail(at(rpath, "rank"), "must be nonnegative");
            r.rank = static_cast<std::size_t>(rank);
            r.action_order = to_integer(field(jr, rpath, "action_order"), at(rpath, "action_order"));
            r.dual_group = group_from_json(field(jr, rpath, "dual_group"), at(rpath, "dual_group"));
            r.rational_group =
                group_from_json(field(jr, rpath, "rational_group"), at(rpath, "rational_group"));
            long long crank = to_ll(field(jr, rpath, "coinvariant_rank"), at(rpath, "coinvariant_rank"));
            if (crank < 0) schema_fail(at(rpath, "coinvariant_rank"), "must be nonnegative");
            r.coinvariant_rank = static_cast<std::size_t>(crank);
            r.dual_check = to_bool(field(jr, rpath, "dual_check"), at(rpath, "dual_check"));
            rep.torus = std::move(r);
            break;
        }
        case InputKind::semistable: {
            SemistableReport r;
            r.action_order = to_integer(field(jr, rpath, "action_order"), at(rpath, "action_order"));
            r.component_group =
                group_from_json(field(jr, rpath, "component_group"), at(rpath, "component_group"));
            r.rational_group =
                group_from_json(field(jr, rpath, "rational_group"), at(rpath, "rational_group"));
            r.split_subgroup =
                group_from_json(field(jr, rpath, "split_subgroup"), at(rpath, "split_subgroup"));
            r.period_h1 = group_from_json(field(jr, rpath, "period_h1"), at(rpath, "period_h1"));
            r.split = to_bool(field(jr, rpath, "split"), at(rpath, "split"));
            r.bounds_ok = to_bool(field(jr, rpath, "bounds_ok"), at(rpath, "bounds_ok"));
            rep.semistable = std::move(r);
            break;
        }
    }
    return rep;
}

bool same_report(const Report& a, const Report& b) { return to_json(a) == to_json(b); }

}  // namespace neron
