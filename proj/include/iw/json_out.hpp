#pragma once

#include <json.hpp>

#include "iw/classifier.hpp"
#include "iw/egorov.hpp"
#include "iw/ideal.hpp"
#include "iw/pathology.hpp"
#include "iw/reduction.hpp"
#include "iw/submeasure.hpp"

namespace iw {

using Json = nlohmann::json;

// Report serialization. Rationals travel as "p/q" strings, keys sort
// alphabetically, and list orders are the computation orders, so emitted
// documents are stable golden-file material.

Json verdict_json(const Verdict& v);

Json derivation_json(const DerivationNode& n);
DerivationNode derivation_from_json(const Json& j);

Json classification_json(const Classification& c);

Json axiom_json(const AxiomReport& r);
Json hull_json(const HullReport& r);
Json scan_json(const ScanReport& r);
Json reduction_json(const ReductionReport& r);
Json diagonal_json(const DiagonalReport& r);

Json growth_json(const GrowthVector& g);
GrowthVector growth_from_json(const Json& j);
Json interval_tree_json(const IntervalTree& t);
IntervalTree interval_tree_from_json(const Json& j);
Json witness_audit_json(const WitnessAudit& a);
Json violation_json(const ViolationReport& r);

}  // namespace iw
