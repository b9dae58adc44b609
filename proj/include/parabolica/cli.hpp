#pragma once

#include "parabolica/rational.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace parabolica::cli {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

enum class Command { Analyze, Curvature, Spectral, PaperSuite, DumpRoots };
enum class Format { Text, Json, Csv };

struct SpectralRequest {
    std::size_t dim = 2;
    std::size_t modes = 64;
    /// 0 means a point singularity (codimension = dim).
    std::size_t codim = 0;
    double s = 0.25;
    double offset = 0.0;
    double side = 6.283185307179586;
    /// HYM constant used for the compatibility constant; unset means derive it
    /// from the bundle when possible, otherwise 1.
    std::optional<Rational> hym;
    double kappa = 0.0;

    friend bool operator==(const SpectralRequest&, const SpectralRequest&) = default;
};

struct AnalysisRequest {
    Command command = Command::Analyze;
    /// Canonical type name such as "B3"; empty when the command takes none.
    std::string lie_type;
    /// 1-based node indices, sorted.
    std::vector<std::size_t> parabolic;
    std::optional<std::vector<long>> weight;
    std::optional<RationalVector> kahler;
    std::optional<std::vector<long>> line;
    std::optional<SpectralRequest> spectral;
    Format format = Format::Text;
    bool quiet = false;

    friend bool operator==(const AnalysisRequest&, const AnalysisRequest&) = default;
};

/// Tokens start at the subcommand (argv[1] onwards). Throws ParseError carrying
/// the offending token index, or FullSetNotParabolic when I covers every node.
AnalysisRequest parse_request(std::span<const std::string> tokens);

/// Canonical token list; parse_request(render_request(r)) == r.
std::vector<std::string> render_request(const AnalysisRequest& r);

/// Structured report for one request (everything except paper-suite).
Json build_report(const AnalysisRequest& r);

struct FixtureResult {
    std::string name;
    Json report;
    std::size_t checked_fields = 0;
};

/// Runs every pinned example. Throws FixtureMismatch naming the fixture and field.
std::vector<FixtureResult> run_paper_suite();

/// Full command-line driver. Returns the process exit code.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace parabolica::cli
