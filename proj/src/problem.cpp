#include "ibvp3/problem.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

namespace ibvp3 {

using json = nlohmann::ordered_json;

Complex direction_value(Direction d) {
    return d == Direction::plus_i ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
}

std::string direction_name(Direction d) {
    return d == Direction::plus_i ? "+i" : "-i";
}

Direction direction_from_name(const std::string& name) {
    if (name == "+i" || name == "i" || name == "+1i")
        return Direction::plus_i;
    if (name == "-i" || name == "-1i")
        return Direction::minus_i;
    throw ParseError("direction must be \"+i\" or \"-i\", got \"" + name + "\"");
}

std::string side_name(Side s) {
    switch (s) {
        case Side::left: return "left";
        case Side::right: return "right";
        case Side::coupled: return "coupled";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_real(const std::string& s) {
    const std::string t = trim(s);
    if (t.empty()) throw ParseError("empty number");
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw ParseError("bad number \"" + s + "\"");
    if (!std::isfinite(v))
        throw ParseError("non-finite number \"" + s + "\"");
    return v;
}

/// Accepts "1.5", "[re, im]", "(re, im)", and literals like "2i", "1+2i", "-i".
Complex parse_complex(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) throw ParseError("empty coefficient");

    if (s.front() == '[' || s.front() == '(') {
        char close = s.front() == '[' ? ']' : ')';
        if (s.back() != close)
            throw ParseError("unterminated coefficient pair \"" + raw + "\"");
        std::string body = s.substr(1, s.size() - 2);
        size_t comma = body.find(',');
        if (comma == std::string::npos)
            return Complex(parse_real(body), 0.0);
        return Complex(parse_real(body.substr(0, comma)),
                       parse_real(body.substr(comma + 1)));
    }

    if (s.back() == 'i' || s.back() == 'I') {
        std::string body = s.substr(0, s.size() - 1);
        // Split "a+b" into real and imaginary parts at the last sign that is
        // not an exponent sign.
        size_t split = std::string::npos;
        for (size_t p = body.size(); p-- > 1;) {
            if ((body[p] == '+' || body[p] == '-') &&
                body[p - 1] != 'e' && body[p - 1] != 'E') {
                split = p;
                break;
            }
        }
        auto unit_or_value = [](const std::string& part) {
            if (part.empty() || part == "+") return 1.0;
            if (part == "-") return -1.0;
            return parse_real(part);
        };
        if (split == std::string::npos)
            return Complex(0.0, unit_or_value(body));
        return Complex(parse_real(body.substr(0, split)),
                       unit_or_value(body.substr(split)));
    }

    return Complex(parse_real(s), 0.0);
}

int parse_single_order(const json& v) {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_number_float()) {
        double d = v.get<double>();
        if (d != std::floor(d))
            throw ParseError("boundary order must be an integer");
        return static_cast<int>(d);
    }
    throw ParseError("boundary order must be an integer");
}

int parse_order_field(const json& v) {
    if (v.is_array()) {
        if (v.empty())
            throw ParseError("boundary order list is empty");
        std::vector<int> orders;
        for (const auto& e : v) orders.push_back(parse_single_order(e));
        for (int o : orders)
            if (o != orders.front())
                throw ValidationError(
                    "mixed-order (Robin) boundary row is unsupported: each "
                    "row must contain a single derivative order");
        return orders.front();
    }
    return parse_single_order(v);
}

Complex parse_coeff_field(const json& v) {
    if (v.is_number()) return Complex(v.get<double>(), 0.0);
    if (v.is_string()) return parse_complex(v.get<std::string>());
    if (v.is_array()) {
        if (v.size() < 1 || v.size() > 2)
            throw ParseError("coefficient array must be [re] or [re, im]");
        double re = v[0].get<double>();
        double im = v.size() == 2 ? v[1].get<double>() : 0.0;
        return Complex(re, im);
    }
    throw ParseError("coefficient must be a number, [re, im], or a string");
}

ProblemDocument parse_json_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("document root must be an object");
    if (!j.contains("direction")) throw ParseError("missing \"direction\"");
    if (!j.contains("bc")) throw ParseError("missing \"bc\"");

    ProblemDocument doc;
    if (!j["direction"].is_string())
        throw ParseError("\"direction\" must be a string");
    doc.direction = direction_from_name(j["direction"].get<std::string>());

    if (!j["bc"].is_array())
        throw ParseError("\"bc\" must be a list of boundary rows");
    for (const auto& entry : j["bc"]) {
        if (!entry.is_object())
            throw ParseError("each \"bc\" entry must be an object");
        if (!entry.contains("order"))
            throw ParseError("boundary row missing \"order\"");
        BoundaryRow row;
        row.order = parse_order_field(entry["order"]);
        row.left = entry.contains("left") ? parse_coeff_field(entry["left"])
                                          : Complex(0.0, 0.0);
        row.right = entry.contains("right") ? parse_coeff_field(entry["right"])
                                            : Complex(0.0, 0.0);
        doc.rows.push_back(row);
    }
    return doc;
}

int parse_kv_order(const std::string& value) {
    // A comma-separated list would denote a mixed-order (Robin) row.
    std::vector<std::string> parts;
    std::string cur;
    for (char c : value) {
        if (c == ',') { parts.push_back(cur); cur.clear(); }
        else cur.push_back(c);
    }
    parts.push_back(cur);
    std::vector<int> orders;
    for (const auto& p : parts) {
        double d = parse_real(p);
        if (d != std::floor(d))
            throw ParseError("boundary order must be an integer");
        orders.push_back(static_cast<int>(d));
    }
    for (int o : orders)
        if (o != orders.front())
            throw ValidationError(
                "mixed-order (Robin) boundary row is unsupported: each row "
                "must contain a single derivative order");
    return orders.front();
}

ProblemDocument parse_kv_document(const std::string& text) {
    ProblemDocument doc;
    bool have_direction = false;
    struct Partial {
        bool have_order = false, have_left = false, have_right = false;
        BoundaryRow row;
    };
    std::map<int, Partial> rows;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) +
                             ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        std::transform(key.begin(), key.end(), key.begin(),
                       [](unsigned char c) { return std::tolower(c); });

        if (key == "direction") {
            doc.direction = direction_from_name(value);
            have_direction = true;
            continue;
        }
        if (key.rfind("bc", 0) == 0) {
            size_t dot = key.find('.');
            if (dot == std::string::npos || dot <= 2)
                throw ParseError("line " + std::to_string(lineno) +
                                 ": expected bcN.field");
            int n = 0;
            try {
                n = std::stoi(key.substr(2, dot - 2));
            } catch (...) {
                throw ParseError("line " + std::to_string(lineno) +
                                 ": bad row index in \"" + key + "\"");
            }
            std::string field = key.substr(dot + 1);
            Partial& p = rows[n];
            if (field == "order") {
                p.row.order = parse_kv_order(value);
                p.have_order = true;
            } else if (field == "left") {
                p.row.left = parse_complex(value);
                p.have_left = true;
            } else if (field == "right") {
                p.row.right = parse_complex(value);
                p.have_right = true;
            } else {
                throw ParseError("line " + std::to_string(lineno) +
                                 ": unknown field \"" + field + "\"");
            }
            continue;
        }
        throw ParseError("line " + std::to_string(lineno) +
                         ": unknown key \"" + key + "\"");
    }

    if (!have_direction) throw ParseError("missing \"direction\"");
    for (const auto& [n, p] : rows) {
        if (!p.have_order)
            throw ParseError("bc" + std::to_string(n) + " is missing .order");
        doc.rows.push_back(p.row);
    }
    return doc;
}

bool is_zero(const Complex& z) { return z.real() == 0.0 && z.imag() == 0.0; }

/// Rank of the induced 3x6 boundary matrix. Column layout: for each order
/// o = 2, 1, 0 a (left, right) column pair; each row occupies only the pair
/// of its own order.
int boundary_matrix_rank(const std::vector<BoundaryRow>& rows) {
    constexpr int cols = 6;
    const int n = static_cast<int>(rows.size());
    std::vector<std::array<Complex, cols>> m(n);
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        m[i].fill(Complex(0.0, 0.0));
        int base = (2 - rows[i].order) * 2;
        m[i][base] = rows[i].left;
        m[i][base + 1] = rows[i].right;
        scale = std::max({scale, std::abs(rows[i].left), std::abs(rows[i].right)});
    }
    const double tol = scale * 1e-12;
    int rank = 0;
    for (int col = 0; col < cols && rank < n; ++col) {
        int pivot = -1;
        double best = tol;
        for (int r = rank; r < n; ++r) {
            if (std::abs(m[r][col]) > best) {
                best = std::abs(m[r][col]);
                pivot = r;
            }
        }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        for (int r = rank + 1; r < n; ++r) {
            Complex f = m[r][col] / m[rank][col];
            for (int c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

struct WorkRow {
    int order;
    Side side;
    double beta; // coupled rows only
};

/// Normalize one raw row: uncoupled rows to coefficient 1, coupled rows to
/// (1, -beta) with beta = -right/left real and nonzero.
WorkRow normalize_row(const BoundaryRow& row, int index) {
    const std::string label = "boundary row " + std::to_string(index + 1);
    if (row.order < 0 || row.order > 2)
        throw ValidationError(label + ": derivative order must be 0, 1 or 2");
    const bool l = !is_zero(row.left), r = !is_zero(row.right);
    if (!l && !r)
        throw ValidationError(label + ": both endpoint coefficients are zero");
    WorkRow w{row.order, Side::left, 0.0};
    if (l && r) {
        Complex ratio = -row.right / row.left;
        if (std::abs(ratio.imag()) > 1e-12 * std::max(1.0, std::abs(ratio)))
            throw ValidationError(
                label + ": unsupported coupling (the coupling constant must "
                "be real; got ratio with nonzero imaginary part)");
        w.side = Side::coupled;
        w.beta = ratio.real();
        if (w.beta == 0.0)
            throw ValidationError(label + ": degenerate coupling constant");
    } else {
        w.side = l ? Side::left : Side::right;
    }
    return w;
}

} // namespace

ProblemDocument parse_problem_document(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return parse_json_document(text);
        break;
    }
    return parse_kv_document(text);
}

ProblemSpec make_problem_spec(const ProblemDocument& doc) {
    if (doc.rows.size() != 3)
        throw ValidationError("expected exactly 3 boundary rows, got " +
                              std::to_string(doc.rows.size()));

    if (boundary_matrix_rank(doc.rows) < 3)
        throw ValidationError(
            "rank-deficient boundary matrix: the three boundary conditions "
            "are not linearly independent");

    std::vector<WorkRow> rows;
    for (size_t i = 0; i < doc.rows.size(); ++i)
        rows.push_back(normalize_row(doc.rows[i], static_cast<int>(i)));

    std::vector<std::string> warnings;

    // Two same-order rows that involve a coupled row jointly pin both
    // endpoint values at that order; rewrite them as the equivalent
    // uncoupled left/right pair so the classification sees the canonical
    // pattern. (Three same-order rows are already rejected by the rank
    // check, as are proportional pairs.)
    for (int o = 0; o <= 2; ++o) {
        std::vector<size_t> idx;
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i].order == o) idx.push_back(i);
        if (idx.size() != 2) continue;
        bool any_coupled = rows[idx[0]].side == Side::coupled ||
                           rows[idx[1]].side == Side::coupled;
        if (!any_coupled) continue;
        rows[idx[0]] = WorkRow{o, Side::left, 0.0};
        rows[idx[1]] = WorkRow{o, Side::right, 0.0};
        warnings.push_back(
            "order-" + std::to_string(o) +
            " row pair jointly pins both endpoints; rewritten as the "
            "equivalent uncoupled left/right pair");
    }

    std::sort(rows.begin(), rows.end(), [](const WorkRow& a, const WorkRow& b) {
        if (a.order != b.order) return a.order > b.order;
        if (a.side != b.side) return static_cast<int>(a.side) < static_cast<int>(b.side);
        return a.beta < b.beta;
    });

    ProblemSpec spec;
    spec.direction = doc.direction;
    for (int i = 0; i < 3; ++i) {
        spec.rows[i] = SpecRow{rows[i].order, rows[i].side, rows[i].beta};
        if (rows[i].side == Side::coupled)
            spec.couplings.push_back(rows[i].beta);
    }
    spec.warnings = std::move(warnings);
    return spec;
}

ProblemSpec parse_spec(const std::string& text) {
    return make_problem_spec(parse_problem_document(text));
}

int coupling_count(const ProblemSpec& spec) {
    return static_cast<int>(spec.couplings.size());
}

namespace {

std::string real_repr(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void row_coeffs(const SpecRow& row, double& left, double& right) {
    switch (row.side) {
        case Side::left: left = 1.0; right = 0.0; break;
        case Side::right: left = 0.0; right = 1.0; break;
        case Side::coupled: left = 1.0; right = -row.beta; break;
    }
}

} // namespace

std::string render_spec(const ProblemSpec& spec, DocumentFormat format) {
    if (format == DocumentFormat::json) {
        json j;
        j["direction"] = direction_name(spec.direction);
        j["bc"] = json::array();
        for (const auto& row : spec.rows) {
            double l = 0.0, r = 0.0;
            row_coeffs(row, l, r);
            j["bc"].push_back({{"order", row.order}, {"left", l}, {"right", r}});
        }
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "direction = " << direction_name(spec.direction) << "\n";
    for (int i = 0; i < 3; ++i) {
        double l = 0.0, r = 0.0;
        row_coeffs(spec.rows[i], l, r);
        out << "bc" << (i + 1) << ".order = " << spec.rows[i].order << "\n";
        out << "bc" << (i + 1) << ".left = " << real_repr(l) << "\n";
        out << "bc" << (i + 1) << ".right = " << real_repr(r) << "\n";
    }
    return out.str();
}

bool operator==(const SpecRow& a, const SpecRow& b) {
    return a.order == b.order && a.side == b.side && a.beta == b.beta;
}

bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
    // Warnings are normalization notes, not part of the problem identity.
    return a.direction == b.direction && a.rows == b.rows &&
           a.couplings == b.couplings;
}

} // namespace ibvp3
