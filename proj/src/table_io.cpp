#include "xydm/table_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "xydm/errors.hpp"

namespace xydm {

namespace {

const char* const kHeader = "J,D,gamma,r,basis,C,dC_dJ,d2C_dJ2";

std::string optional_field(const std::optional<double>& v) { return v ? format_exact(*v) : std::string(); }

double parse_double(const std::string& field, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ValidationError("line " + std::to_string(line) + ": bad number '" + field + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += ch;
        }
    }
    fields.push_back(field);
    return fields;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += (ch == '\n' || ch == '\r') ? ' ' : ch;
    }
    return out + "\"";
}

}  // namespace

std::string format_exact(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const SweepTable& table) {
    const bool any_error =
        std::any_of(table.rows.begin(), table.rows.end(), [](const SweepRow& r) { return !r.valid(); });
    out << kHeader << (any_error ? ",error" : "") << '\n';
    for (const auto& row : table.rows) {
        out << format_exact(row.J) << ',' << format_exact(row.D) << ',' << format_exact(row.gamma) << ','
            << row.r << ',' << to_string(row.basis) << ',';
        if (row.valid()) {
            out << format_exact(row.C) << ',' << optional_field(row.dC_dJ) << ',' << optional_field(row.d2C_dJ2);
        } else {
            out << ",,";
        }
        if (any_error) out << ',' << (row.error ? quote(*row.error) : std::string());
        out << '\n';
    }
}

SweepTable read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty CSV input");
    const bool with_error = line == std::string(kHeader) + ",error";
    if (line != kHeader && !with_error) throw ValidationError("unexpected CSV header: " + line);
    const std::size_t expected = with_error ? 9 : 8;

    SweepTable table;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != expected) {
            throw ValidationError("line " + std::to_string(line_no) + ": expected " + std::to_string(expected) +
                                  " fields, got " + std::to_string(f.size()));
        }
        SweepRow row;
        row.J = parse_double(f[0], line_no);
        row.D = parse_double(f[1], line_no);
        row.gamma = parse_double(f[2], line_no);
        row.r = static_cast<int>(parse_double(f[3], line_no));
        row.basis = parse_basis(f[4]);
        if (with_error && !f[8].empty()) {
            row.error = f[8];
        } else {
            row.C = parse_double(f[5], line_no);
            if (!f[6].empty()) row.dC_dJ = parse_double(f[6], line_no);
            if (!f[7].empty()) row.d2C_dJ2 = parse_double(f[7], line_no);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_json(std::ostream& out, const SweepTable& table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json j;
        j["J"] = row.J;
        j["D"] = row.D;
        j["gamma"] = row.gamma;
        j["r"] = row.r;
        j["basis"] = std::string(to_string(row.basis));
        if (row.valid()) {
            j["C"] = row.C;
            j["dC_dJ"] = row.dC_dJ ? nlohmann::ordered_json(*row.dC_dJ) : nlohmann::ordered_json(nullptr);
            j["d2C_dJ2"] = row.d2C_dJ2 ? nlohmann::ordered_json(*row.d2C_dJ2) : nlohmann::ordered_json(nullptr);
        } else {
            j["error"] = *row.error;
        }
        rows.push_back(std::move(j));
    }
    out << rows.dump(2) << '\n';
}

}  // namespace xydm
