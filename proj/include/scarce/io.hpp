#ifndef SCARCE_IO_HPP
#define SCARCE_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "scarce/builder.hpp"
#include "scarce/frobenius.hpp"
#include "scarce/oscillation.hpp"
#include "scarce/verify.hpp"

namespace scarce {

using Json = nlohmann::ordered_json;

/// Thrown for JSON that does not describe the expected object.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact numbers as {"exact": "p/q", "exact_im": "r/s"}; floats as
// {"float": [re, im]} with decimal strings at the working precision.
Json to_json(const CNum& x);
CNum cnum_from_json(const Json& j);

// {"den": d, "terms": [[j, number], ...]} in increasing j.
Json to_json(const ExpPoly& a);
ExpPoly exppoly_from_json(const Json& j);

inline constexpr int kSolutionSchema = 1;
Json to_json(const SolutionForm& s);
SolutionForm solution_from_json(const Json& j);
// A single solution object or an array of them.
std::vector<SolutionForm> solutions_from_json(const Json& j);

Json to_json(const EqSpec& spec);
Json to_json(const ClosureSystem& c);
Json to_json(const VerifyReport& r);
Json to_json(const FamilyResult& f);
Json to_json(const PairResult& p);
Json to_json(const ProbeBranch& b);
Json to_json(const PowerSeries& p);
Json to_json(const FrobeniusPair& fp);
Json to_json(const SeriesMatch& m);
Json to_json(const ZeroLattice& lat);
Json to_json(const ArgumentCount& a);
Json to_json(const SectorDecomp& d);
Json to_json(const RaySample& s);

// Deterministic pretty rendering (two-space indent, trailing newline).
std::string render(const Json& j);

}  // namespace scarce

#endif  // SCARCE_IO_HPP
