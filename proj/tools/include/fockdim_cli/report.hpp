#pragma once

#include <json.hpp>
#include <string>

#include "fockdim/criteria.hpp"
#include "fockdim/hermitian.hpp"
#include "fockdim/membership.hpp"
#include "fockdim/riesz.hpp"
#include "fockdim/sphere.hpp"
#include "fockdim/weight.hpp"

namespace fockdim::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "fockdim-report/1";

/// Non-finite doubles become null or the strings "inf" / "-inf".
Json number(double x);
Json complex_json(std::complex<double> z);
Json point_json(std::span<const std::complex<double>> z);

Json ast_json(const WeightExpr& expr);
Json matrix_json(const HermitianMatrix& h);
Json shell_json(const Shell& s);
Json estimate_json(const MeasureEstimate& e);
Json atoms_json(const AtomList& atoms);
Json dim_json(const DimReport& r);
Json verdict_json(const Verdict& v);
Json sample_json(const Sample& s);
Json criterion_json(const CriterionReport& r);
Json separable_json(const SeparableReport& r);
Json counterexample_json(const CounterexampleReport& r);
Json teps_json(const TEpsEstimate& t);
Json singular_json(const SingularEstimate& s);
Json lelong_json(const LelongEstimate& l);

/// {"schema", "command", "status", "input", "result"}.
Json envelope(const std::string& command, const std::string& status, Json input, Json result);

}  // namespace fockdim::cli
