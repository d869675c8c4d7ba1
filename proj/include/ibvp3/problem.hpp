#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "ibvp3/errors.hpp"

namespace ibvp3 {

using Complex = std::complex<double>;

/// Direction coefficient a = sign * i of the evolution equation
/// dq/dt + a (-i d/dx)^3 q = 0. Only a = +i and a = -i are admitted.
enum class Direction { plus_i, minus_i };

Complex direction_value(Direction d);          // +i or -i
std::string direction_name(Direction d);       // "+i" or "-i"
Direction direction_from_name(const std::string& name);

/// One boundary condition row as written in a problem document:
/// left * d^order q(0,t) + right * d^order q(1,t) = 0.
/// Non-Robin: a row carries exactly one derivative order.
struct BoundaryRow {
    int order = 0;          // derivative order, one of {0, 1, 2}
    Complex left{0.0, 0.0};
    Complex right{0.0, 0.0};
};

/// Raw parsed document before validation/normalization.
struct ProblemDocument {
    Direction direction = Direction::plus_i;
    std::vector<BoundaryRow> rows;
};

/// Side placement of a normalized boundary row.
enum class Side { left, right, coupled };

std::string side_name(Side s);

/// Normalized boundary row. Uncoupled rows carry coefficient 1 at their
/// endpoint; coupled rows are scaled to (left, right) = (1, -beta), i.e.
/// the condition reads d^order q(0,t) = beta * d^order q(1,t).
struct SpecRow {
    int order = 0;
    Side side = Side::left;
    double beta = 0.0;      // meaningful only for coupled rows
};

/// Validated, normalized problem specification. Immutable after
/// construction; safe to share across threads.
struct ProblemSpec {
    Direction direction = Direction::plus_i;
    std::array<SpecRow, 3> rows{};
    std::vector<double> couplings;     // betas of coupled rows, in row order
    std::vector<std::string> warnings; // normalization notes
};

/// Parse a problem document. The text may be JSON ({"direction": "+i",
/// "bc": [{"order":0,"left":1,"right":0}, ...]}) or the key-value dialect
/// (direction = +i / bc1.order = 0 / bc1.left = 1 / ...). Complex
/// coefficients are written [re, im] or as literals like 1+2i.
ProblemDocument parse_problem_document(const std::string& text);

/// Validate and normalize a document into a ProblemSpec.
///
/// Rejects: wrong row count, orders outside {0,1,2}, mixed-order (Robin)
/// rows, all-zero rows, rank-deficient boundary matrices, and coupled rows
/// whose coupling ratio is not real. Pairs of same-order rows that jointly
/// pin both endpoint values are rewritten as the equivalent uncoupled
/// left/right pair (with a warning), so the classification tables see a
/// canonical pattern. Rows are sorted canonically.
ProblemSpec make_problem_spec(const ProblemDocument& doc);

/// Convenience: parse + validate.
ProblemSpec parse_spec(const std::string& text);

/// Number of coupled rows (both endpoint coefficients nonzero): 0..3.
int coupling_count(const ProblemSpec& spec);

enum class DocumentFormat { json, keyvalue };

/// Render a spec back to a document in the requested format.
/// parse_spec(render_spec(s)) == s for every valid spec.
std::string render_spec(const ProblemSpec& spec,
                        DocumentFormat format = DocumentFormat::json);

bool operator==(const SpecRow& a, const SpecRow& b);
bool operator==(const ProblemSpec& a, const ProblemSpec& b);

} // namespace ibvp3
