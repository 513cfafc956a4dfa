#pragma once

#include "specklab/family.hpp"
#include "specklab/optimizers.hpp"
#include "specklab/polytope.hpp"
#include "specklab/realization.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace specklab::io {

using Json = nlohmann::json;

/// Parses a file; InputError with line and column on failure.
Json read_json_file(const std::filesystem::path& path);
/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);
void write_json_file(const std::filesystem::path& path, const Json& j);

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j, const std::string& where);

Json to_json(const MarginalScenario& s);
/// {"measurements": n, "outcomes": k, "contexts": [[1,2], ...]}; the result is
/// canonicalized and validated.
MarginalScenario scenario_from_json(const Json& j);

Json to_json(const Event& e);
Event event_from_json(const Json& j, const MarginalScenario& s);
Json to_json(const GeneralizedEvent& g);

Json to_json(const ProbabilisticModel& p);
/// Events not listed get probability 0.
ProbabilisticModel model_from_json(const Json& j);

Json to_json(const DeterministicModel& d);

/// Event-coefficient form with nonzero coefficients only.
Json to_json(const LinearFunctional& f);
/// Accepts the event-coefficient form or the correlator form
/// {"const": .., "singles": {"1": ..}, "pairs": {"1,2": ..}}. A correlator
/// file without "scenario" is read over the binary scenario of all pairs
/// on the largest measurement mentioned.
LinearFunctional functional_from_json(const Json& j);
Json to_json(const CorrelatorExpression& e);

Json to_json(const InequalitySpec& spec);
Json to_json(const FamilyCertificate& c, const LinearFunctional& functional);
Json to_json(const FacetReport& r);
Json to_json(const ExactCollapseReport& r);
Json to_json(const CollapseReport& r);
Json to_json(const MembershipCertificate& c);
Json to_json(const sdp::SdpReport& r);
Json to_json(const sdp::SymMatrix& m);
Json to_json(const MomentCheck& c);
Json to_json(const RealizationReport& r);
Json to_json(const JointMeasurabilityReport& r);

/// Rows of entries, each a number or [re, im].
sdp::HermMatrix herm_from_json(const Json& j, const std::string& where);

}  // namespace specklab::io
