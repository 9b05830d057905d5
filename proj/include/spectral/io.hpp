#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "criteria.hpp"
#include "errors.hpp"
#include "fourier.hpp"
#include "geometry.hpp"
#include "lattice.hpp"
#include "search.hpp"

namespace spectral::io
{
using json = nlohmann::ordered_json;

//! Malformed or schema-invalid input
class SchemaError : public Error
{
  public:
    using Error::Error;
};

//! Rationals are strings ("3/2") or JSON integers
Rational parse_rational(json const& j);
json to_json(Rational const& r);
RVec parse_rvec(json const& j);
json to_json(RVec const& v);

/*!
 * Domains are one of
 *   {"boxes": [{"lo": [...], "hi": [...]}, ...]}
 *   {"intervals": [["a", "b"], ...]}
 *   {"product": [domain, ...]}
 *   {"cube": d}
 */
Domain parse_domain(json const& j);
json to_json(Domain const& u);

Box parse_box(json const& j);
json to_json(Box const& b);

/*!
 * Point sets:
 *   {"type": "periodic", "basis": [[...], ...], "reps": [[...], ...]}
 *     (each inner basis array is one generator, i.e. one column of M)
 *   {"type": "window", "points": [[...], ...], "window": box}
 *   {"type": "shifted_columns", "shifts": [...], "window": box}
 * A periodic set may also carry a "window" for windowed checks. Points
 * and shifts may be rational strings or JSON reals.
 */
struct PointSetSpec
{
    std::optional<PeriodicSet> periodic;
    std::optional<WindowSet> windowed;
    //! JSON as given, re-emitted verbatim
    json source;
};

PointSetSpec parse_pointset(json const& j);
json to_json(PeriodicSet const& s);
json to_json(WindowSet const& s);

json to_json(ZeroSet const& z);
json to_json(TailBound const& t);
json to_json(Multiplicity const& m);
json to_json(DualWeight const& w);
json to_json(Witness const& w);
json to_json(Verdict const& v);
json to_json(SpectrumCertificate const& c);
json to_json(SearchSolution const& s);

//! Inverse of the verdict writer for status, margins and notes; the witness
//! is kept as JSON
struct VerdictRecord
{
    Status status{Status::inconclusive};
    std::vector<Margin> margins;
    std::vector<std::string> notes;
    std::optional<json> witness;
};
VerdictRecord parse_verdict(json const& j);
Status parse_status(std::string const& s);

struct TileSpecs
{
    TileSpec f;
    TileSpec g;
};

struct Parameters
{
    std::optional<double> tol;
    std::optional<double> radius;
    std::optional<std::size_t> grid;
    std::optional<RVec> period;
    std::optional<Rational> grid_step;
    std::optional<std::vector<RVec>> candidates;
    std::optional<double> rho;
    std::optional<bool> normalize;
};

/*!
 * Problem file: {"version": 1, "domain": ..., "region": ...,
 * "pointset": ..., "tiles": {"f": {"kind", "domain"}, "g": ...},
 * "parameters": {...}}. Unknown keys are rejected.
 */
struct ProblemFile
{
    int version{1};
    std::optional<Domain> domain;
    std::optional<Domain> region;
    std::optional<PointSetSpec> pointset;
    std::optional<TileSpecs> tiles;
    Parameters parameters;
};

ProblemFile parse_problem(json const& j);
ProblemFile load_problem(std::string const& path);

}  // namespace spectral::io
