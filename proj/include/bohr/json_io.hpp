#pragma once

#include "bohr/ap_algebra.hpp"
#include "bohr/bohr_group.hpp"
#include "bohr/fleischhack_space.hpp"
#include "bohr/kinematical_hilbert.hpp"
#include "bohr/measure_lab.hpp"

#include <json.hpp>

namespace bohr {

using Json = nlohmann::ordered_json;

// Readers throw InputError on malformed or invalid documents. Coefficient
// fields ("re", "im", angles) accept strings, read as exact rationals, or
// JSON numbers, read as doubles (integers stay exact).

Json generator_to_json(const Generator& g);
Generator generator_from_json(const Json& j);

Json module_to_json(const Module& m);
Module module_from_json(const Json& j);

/// [re, im] as numbers; exact integers print without a fraction part.
Json scalar_to_json(const Scalar& s);
/// ["re", "im"] as rational strings, or null for an inexact value.
Json scalar_exact_json(const Scalar& s);

Json ap_to_json(const APFunction& f);
APFunction ap_from_json(const Json& j);

Json measure_to_json(const FSMeasure& mu);
FSMeasure measure_from_json(const Json& j);

Json point_to_json(const BohrPoint& p);
BohrPoint point_from_json(const Json& j, const Module& module);

Json r_part_to_json(const RealLineMeasure& r);
RealLineMeasure r_part_from_json(const Json& j);

Json qmeasure_to_json(const QMeasure& mu);
QMeasure qmeasure_from_json(const Json& j);

Json matrix_to_json(const ScalarMatrix& m);
Json frequency_to_json(const Frequency& f);

Json uniqueness_to_json(const UniquenessVerdict& v);
Json q_verdict_to_json(const QVerdict& v);

}  // namespace bohr
