#include "specklab/json_io.hpp"

#include "specklab/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace specklab::io {

namespace {

const Json& field(const Json& j, const std::string& key, const std::string& where)
{
    if (!j.is_object())
        throw InputError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw InputError(where + ": missing field \"" + key + "\"");
    return *it;
}

int int_from_json(const Json& j, const std::string& where)
{
    if (!j.is_number_integer())
        throw InputError(where + ": expected an integer");
    return j.get<int>();
}

std::vector<int> ints_from_json(const Json& j, const std::string& where)
{
    if (!j.is_array())
        throw InputError(where + ": expected an array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(int_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

std::string relation_name(lp::Relation r)
{
    switch (r) {
    case lp::Relation::less_equal:
        return "<=";
    case lp::Relation::equal:
        return "==";
    case lp::Relation::greater_equal:
        return ">=";
    }
    return "<=";
}

lp::Relation relation_from_json(const Json& j, const std::string& where)
{
    if (j == "<=")
        return lp::Relation::less_equal;
    if (j == ">=")
        return lp::Relation::greater_equal;
    if (j == "==")
        return lp::Relation::equal;
    throw InputError(where + ": relation must be \"<=\", \">=\" or \"==\"");
}

std::optional<DeclaredBound> bound_from_json(const Json& j, const std::string& where)
{
    auto it = j.find("bound");
    if (it == j.end() || it->is_null())
        return std::nullopt;
    return DeclaredBound{relation_from_json(field(*it, "relation", where + ".bound"), where + ".bound.relation"),
                         rational_from_json(field(*it, "value", where + ".bound"), where + ".bound.value")};
}

LinearFunctional correlator_functional_from_json(const Json& j)
{
    CorrelatorExpression e;
    int largest = 0;
    if (auto it = j.find("const"); it != j.end())
        e.constant = rational_from_json(*it, "functional.const");
    if (auto it = j.find("singles"); it != j.end()) {
        if (!it->is_object())
            throw InputError("functional.singles: expected an object");
        for (const auto& [key, value] : it->items()) {
            int m = 0;
            try {
                std::size_t used = 0;
                m = std::stoi(key, &used);
                if (used != key.size())
                    throw std::invalid_argument(key);
            } catch (const std::exception&) {
                throw InputError("functional.singles: key \"" + key + "\" is not a measurement label");
            }
            e.singles[m] = rational_from_json(value, "functional.singles." + key);
            largest = std::max(largest, m);
        }
    }
    if (auto it = j.find("pairs"); it != j.end()) {
        if (!it->is_object())
            throw InputError("functional.pairs: expected an object");
        for (const auto& [key, value] : it->items()) {
            int a = 0, b = 0;
            char comma = 0;
            std::istringstream in(key);
            if (!(in >> a >> comma >> b) || comma != ',' || !in.eof())
                throw InputError("functional.pairs: key \"" + key + "\" is not of the form \"i,j\"");
            if (a > b)
                std::swap(a, b);
            if (a == b)
                throw InputError("functional.pairs: key \"" + key + "\" repeats a measurement");
            e.pairs[{a, b}] += rational_from_json(value, "functional.pairs." + key);
            largest = std::max(largest, b);
        }
    }
    MarginalScenario s;
    if (auto it = j.find("scenario"); it != j.end())
        s = scenario_from_json(*it);
    else if (largest >= 2)
        s = make_symmetric_scenario(largest, 2, 2);
    else
        throw InputError("functional: correlator form without a scenario needs at least two measurements");
    try {
        auto f = correlators_to_functional(e, s);
        f.bound = bound_from_json(j, "functional");
        return f;
    } catch (const ParameterError& err) {
        throw InputError(std::string("functional: ") + err.what());
    }
}

}  // namespace

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw InputError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(column)
                         + ": malformed JSON");
    }
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

void write_json_file(const std::filesystem::path& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write " + path.string());
    out << dump(j);
}

Json to_json(const Rational& q)
{
    return to_string(q);
}

Rational rational_from_json(const Json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Rational(Integer(std::to_string(j.get<long long>())));
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw InputError(where + ": \"" + j.get<std::string>() + "\" is not a rational number");
        }
    }
    throw InputError(where + ": expected a rational as a string \"p/q\" or an integer");
}

Json to_json(const MarginalScenario& s)
{
    return Json{{"measurements", s.measurements}, {"outcomes", s.outcomes}, {"contexts", s.contexts}};
}

MarginalScenario scenario_from_json(const Json& j)
{
    MarginalScenario s;
    s.measurements = int_from_json(field(j, "measurements", "scenario"), "scenario.measurements");
    s.outcomes = int_from_json(field(j, "outcomes", "scenario"), "scenario.outcomes");
    const auto& ctx = field(j, "contexts", "scenario");
    if (!ctx.is_array())
        throw InputError("scenario.contexts: expected an array");
    for (std::size_t i = 0; i < ctx.size(); ++i)
        s.contexts.push_back(ints_from_json(ctx[i], "scenario.contexts[" + std::to_string(i) + "]"));
    s = canonicalize(std::move(s));
    auto issues = validate_scenario(s);
    if (!issues.empty())
        throw InputError("scenario: " + issues.front().message);
    return s;
}

Json to_json(const Event& e)
{
    return Json{{"context", e.context}, {"outcomes", e.outcomes}};
}

Event event_from_json(const Json& j, const MarginalScenario& s)
{
    Event e{ints_from_json(field(j, "context", "event"), "event.context"),
            ints_from_json(field(j, "outcomes", "event"), "event.outcomes")};
    if (std::find(s.contexts.begin(), s.contexts.end(), e.context) == s.contexts.end())
        throw InputError("event: context is not a maximal context of the scenario");
    if (e.outcomes.size() != e.context.size())
        throw InputError("event: outcome list does not match the context");
    for (int a : e.outcomes)
        if (a < 0 || a >= s.outcomes)
            throw InputError("event: outcome " + std::to_string(a) + " out of range");
    return e;
}

Json to_json(const GeneralizedEvent& g)
{
    return Json{{"measurements", g.measurements}, {"outcomes", g.outcomes}};
}

Json to_json(const ProbabilisticModel& p)
{
    EventSpace space(p.scenario);
    Json values = Json::array();
    for (std::size_t v = 0; v < space.size(); ++v)
        values.push_back(Json{{"event", to_json(space.events()[v])}, {"p", to_json(p.values[v])}});
    return Json{{"scenario", to_json(p.scenario)}, {"values", values}};
}

ProbabilisticModel model_from_json(const Json& j)
{
    auto s = scenario_from_json(field(j, "scenario", "model"));
    EventSpace space(s);
    ProbabilisticModel p{s, RationalVector(space.size())};
    const auto& values = field(j, "values", "model");
    if (!values.is_array())
        throw InputError("model.values: expected an array");
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::string where = "model.values[" + std::to_string(i) + "]";
        auto v = space.index(event_from_json(field(values[i], "event", where), s));
        if (!seen.insert(v).second)
            throw InputError(where + ": event listed twice");
        p.values[v] = rational_from_json(field(values[i], "p", where), where + ".p");
    }
    return p;
}

Json to_json(const DeterministicModel& d)
{
    return Json(d.assignment);
}

Json to_json(const LinearFunctional& f)
{
    EventSpace space(f.scenario);
    Json coefficients = Json::array();
    for (std::size_t v = 0; v < space.size(); ++v)
        if (f.coefficients[v] != 0)
            coefficients.push_back(Json{{"event", to_json(space.events()[v])}, {"c", to_json(f.coefficients[v])}});
    Json j{{"scenario", to_json(f.scenario)}, {"coefficients", coefficients}, {"offset", to_json(f.offset)}};
    if (f.bound)
        j["bound"] = Json{{"relation", relation_name(f.bound->relation)}, {"value", to_json(f.bound->value)}};
    return j;
}

LinearFunctional functional_from_json(const Json& j)
{
    if (!j.is_object())
        throw InputError("functional: expected an object");
    if (j.contains("pairs") || j.contains("singles") || j.contains("const"))
        return correlator_functional_from_json(j);
    auto s = scenario_from_json(field(j, "scenario", "functional"));
    EventSpace space(s);
    auto f = zero_functional(s);
    if (auto it = j.find("offset"); it != j.end())
        f.offset = rational_from_json(*it, "functional.offset");
    const auto& coefficients = field(j, "coefficients", "functional");
    if (!coefficients.is_array())
        throw InputError("functional.coefficients: expected an array");
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        const std::string where = "functional.coefficients[" + std::to_string(i) + "]";
        auto v = space.index(event_from_json(field(coefficients[i], "event", where), s));
        f.coefficients[v] += rational_from_json(field(coefficients[i], "c", where), where + ".c");
    }
    f.bound = bound_from_json(j, "functional");
    return f;
}

Json to_json(const CorrelatorExpression& e)
{
    Json singles = Json::object(), pairs = Json::object();
    for (const auto& [m, w] : e.singles)
        singles[std::to_string(m)] = to_json(w);
    for (const auto& [p, w] : e.pairs)
        pairs[std::to_string(p.first) + "," + std::to_string(p.second)] = to_json(w);
    return Json{{"const", to_json(e.constant)}, {"singles", singles}, {"pairs", pairs}};
}

Json to_json(const InequalitySpec& spec)
{
    return Json{{"n", spec.n}, {"k", spec.k()}, {"S", spec.subset}, {"s", spec.s}, {"o", spec.o}};
}

Json to_json(const FamilyCertificate& c, const LinearFunctional& functional)
{
    Json events = Json::array();
    for (const auto& g : c.exclusive_set)
        events.push_back(to_json(g));
    return Json{{"spec", to_json(c.spec)},
                {"functional", to_json(functional)},
                {"exclusive_set", events},
                {"status", c.passed() ? "certified" : "failed"},
                {"identity", c.identity_holds},
                {"clique", c.clique}};
}

Json to_json(const FacetReport& r)
{
    Json canonical = Json::array();
    for (const auto& x : r.canonical)
        canonical.push_back(x.get_str());
    return Json{{"inequality", to_json(r.inequality)},
                {"canonical", canonical},
                {"valid", r.valid},
                {"saturating_vertices", r.saturating.size()},
                {"saturating_dimension", r.saturating_dimension},
                {"is_facet", r.is_facet},
                {"class", to_string(r.classification)},
                {"clique", r.clique}};
}

Json to_json(const ExactCollapseReport& r)
{
    return Json{{"n", r.n},
                {"ce_vertices", r.ce_vertices},
                {"vertices_deterministic", r.vertices_deterministic},
                {"facets", r.facets},
                {"expected_facets", r.expected_facets},
                {"facets_match_family", r.facets_match_family},
                {"q1_checked", r.q1_checked},
                {"q1_worst_excess", r.q1_worst_excess},
                {"q1_ok", r.q1_ok},
                {"problems", r.problems},
                {"passed", r.passed()}};
}

Json to_json(const CollapseReport& r)
{
    Json trials = Json::array();
    for (const auto& t : r.trials) {
        Json entry{{"classical", to_json(t.classical)},
                   {"ce", to_json(t.ce)},
                   {"q1", t.q1},
                   {"q1_converged", t.q1_converged},
                   {"collapsed", t.collapsed}};
        if (!t.collapsed)
            entry["functional"] = to_json(t.functional);
        trials.push_back(std::move(entry));
    }
    return Json{{"scenario", r.scenario_label}, {"trials", trials}, {"gaps", r.gaps()}, {"all_collapsed", r.all_collapsed()}};
}

Json to_json(const MembershipCertificate& c)
{
    Json j{{"member", c.member}};
    if (c.member) {
        Json parts = Json::array();
        for (std::size_t i = 0; i < c.assignments.size(); ++i)
            parts.push_back(Json{{"assignment", to_json(c.assignments[i])}, {"weight", to_json(c.weights[i])}});
        j["decomposition"] = parts;
    }
    if (c.separating)
        j["separating_functional"] = to_json(*c.separating);
    return j;
}

Json to_json(const sdp::SdpReport& r)
{
    Json trace = Json::array();
    for (const auto& t : r.trace)
        trace.push_back(Json{{"iteration", t.iteration},
                             {"objective", t.objective},
                             {"primal_residual", t.primal_residual},
                             {"affine_residual", t.affine_residual},
                             {"dual_residual", t.dual_residual}});
    return Json{{"status", sdp::to_string(r.status)},
                {"iterations", r.iterations},
                {"primal_residual", r.primal_residual},
                {"affine_residual", r.affine_residual},
                {"dual_residual", r.dual_residual},
                {"objective_change", r.objective_change},
                {"min_eigenvalue", r.min_eigenvalue},
                {"trace", trace}};
}

Json to_json(const sdp::SymMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dimension(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.dimension(); ++j)
            row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const MomentCheck& c)
{
    return Json{{"min_eigenvalue", c.min_eigenvalue},
                {"unit_residual", c.unit_residual},
                {"diagonal_residual", c.diagonal_residual},
                {"exclusivity_residual", c.exclusivity_residual},
                {"model_residual", c.model_residual}};
}

Json to_json(const RealizationReport& r)
{
    return Json{{"valid", r.valid},
                {"issues", r.issues},
                {"model", r.model},
                {"max_residual", r.max_residual},
                {"normalized", r.normalized}};
}

Json to_json(const JointMeasurabilityReport& r)
{
    return Json{{"valid", r.valid}, {"issues", r.issues}, {"max_residual", r.max_residual}};
}

sdp::HermMatrix herm_from_json(const Json& j, const std::string& where)
{
    if (!j.is_array() || j.empty())
        throw InputError(where + ": expected a nonempty array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw InputError(where + ": row " + std::to_string(r) + " has the wrong length");
        for (Eigen::Index c = 0; c < n; ++c) {
            const auto& x = row[static_cast<std::size_t>(c)];
            if (x.is_number())
                m(r, c) = x.get<double>();
            else if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number())
                m(r, c) = std::complex<double>(x[0].get<double>(), x[1].get<double>());
            else
                throw InputError(where + ": entry (" + std::to_string(r) + "," + std::to_string(c)
                                 + ") must be a number or [re, im]");
        }
    }
    try {
        return sdp::HermMatrix(m);
    } catch (const ParameterError& e) {
        throw InputError(where + ": " + e.what());
    }
}

}  // namespace specklab::io
