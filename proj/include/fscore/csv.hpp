// CSV input/output for the three data files.
//
// statements.csv / defaults.csv / ratings.csv, header required, UTF-8,
// '.' decimal separator, empty cell = missing. Numbers render via to_chars
// so a write/read round trip is value-exact.

#pragma once

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fscore/statement.hpp"

namespace fscore {
namespace csv {

// Minimal RFC-4180 line splitter (quoted fields, doubled quotes).
inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

inline std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

inline std::string format_number(double v) {
    char buf[40];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline std::string format_money(const Money& m) { return m ? format_number(*m) : std::string(); }

// Header-driven table reader; strips \r, skips fully empty lines.
class Table {
  public:
    Table(std::istream& in, const std::vector<std::string>& required_columns,
          const std::string& what) {
        std::string line;
        if (!std::getline(in, line))
            throw std::invalid_argument(what + ": missing header line");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto header = split_line(line);
        for (std::size_t i = 0; i < header.size(); ++i) columns_[header[i]] = i;
        for (const auto& col : required_columns)
            if (!columns_.count(col))
                throw std::invalid_argument(what + ": missing required column '" + col + "'");
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            auto fields = split_line(line);
            if (fields.size() != header.size())
                throw std::invalid_argument(what + ": line " + std::to_string(lineno) + " has " +
                                            std::to_string(fields.size()) + " fields, expected " +
                                            std::to_string(header.size()));
            rows_.push_back(std::move(fields));
            line_numbers_.push_back(lineno);
        }
    }

    std::size_t size() const { return rows_.size(); }
    std::size_t line_number(std::size_t row) const { return line_numbers_[row]; }

    const std::string& cell(std::size_t row, const std::string& col) const {
        return rows_[row][columns_.at(col)];
    }

  private:
    std::map<std::string, std::size_t> columns_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::size_t> line_numbers_;
};

inline Money parse_money(const std::string& cell, const std::string& what, std::size_t lineno) {
    if (cell.empty()) return std::nullopt;
    double v = 0;
    auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || p != cell.data() + cell.size())
        throw std::invalid_argument(what + ": line " + std::to_string(lineno) +
                                    ": bad number '" + cell + "'");
    return v;
}

inline const std::vector<std::string>& statement_columns() {
    static const std::vector<std::string> cols = {
        "company_id",        "period_end",        "period_type",      "assets",
        "sales",             "ebit",              "interest_expense", "equity",
        "total_liabilities", "retained_earnings", "working_capital",  "cash",
        "cash_and_equivalents", "short_term_debt", "current_assets"};
    return cols;
}

inline std::vector<FinancialStatement> read_statements(std::istream& in) {
    const std::string what = "statements.csv";
    Table t(in, statement_columns(), what);
    std::vector<FinancialStatement> out;
    out.reserve(t.size());
    for (std::size_t r = 0; r < t.size(); ++r) {
        const auto lineno = t.line_number(r);
        FinancialStatement s;
        s.company_id = t.cell(r, "company_id");
        if (s.company_id.empty())
            throw std::invalid_argument(what + ": line " + std::to_string(lineno) +
                                        ": empty company_id");
        s.period_end = parse_date(t.cell(r, "period_end"));
        const auto type = parse_period_type(t.cell(r, "period_type"));
        if (!type)
            throw std::invalid_argument(what + ": line " + std::to_string(lineno) +
                                        ": bad period_type '" + t.cell(r, "period_type") + "'");
        s.period_type = *type;
        if (!is_quarter_end(s.period_end) ||
            unsigned(s.period_end.month()) != period_end_month(s.period_type))
            throw std::invalid_argument(what + ": line " + std::to_string(lineno) + ": " +
                                        format_date(s.period_end) + " is not a valid " +
                                        std::string(to_string(s.period_type)) + " period end");
        auto money = [&](const char* col) { return parse_money(t.cell(r, col), what, lineno); };
        s.assets = money("assets");
        s.sales = money("sales");
        s.ebit = money("ebit");
        s.interest_expense = money("interest_expense");
        s.equity = money("equity");
        s.total_liabilities = money("total_liabilities");
        s.retained_earnings = money("retained_earnings");
        s.working_capital = money("working_capital");
        s.cash = money("cash");
        s.cash_and_equivalents = money("cash_and_equivalents");
        s.short_term_debt = money("short_term_debt");
        s.current_assets = money("current_assets");
        out.push_back(std::move(s));
    }
    return out;
}

inline void write_statements(std::ostream& out, const std::vector<FinancialStatement>& rows) {
    const auto& cols = statement_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& s : rows) {
        out << quote_if_needed(s.company_id) << ',' << format_date(s.period_end) << ','
            << to_string(s.period_type) << ',' << format_money(s.assets) << ','
            << format_money(s.sales) << ',' << format_money(s.ebit) << ','
            << format_money(s.interest_expense) << ',' << format_money(s.equity) << ','
            << format_money(s.total_liabilities) << ',' << format_money(s.retained_earnings)
            << ',' << format_money(s.working_capital) << ',' << format_money(s.cash) << ','
            << format_money(s.cash_and_equivalents) << ',' << format_money(s.short_term_debt)
            << ',' << format_money(s.current_assets) << '\n';
    }
}

inline std::vector<DefaultEvent> read_defaults(std::istream& in) {
    const std::string what = "defaults.csv";
    Table t(in, {"company_id", "default_date", "kind"}, what);
    std::vector<DefaultEvent> out;
    out.reserve(t.size());
    for (std::size_t r = 0; r < t.size(); ++r) {
        DefaultEvent d;
        d.company_id = t.cell(r, "company_id");
        d.default_date = parse_date(t.cell(r, "default_date"));
        const auto kind = parse_default_kind(t.cell(r, "kind"));
        if (!kind)
            throw std::invalid_argument(what + ": line " + std::to_string(t.line_number(r)) +
                                        ": bad kind '" + t.cell(r, "kind") +
                                        "' (expected REAL or TECHNICAL)");
        d.kind = *kind;
        out.push_back(std::move(d));
    }
    return out;
}

inline void write_defaults(std::ostream& out, const std::vector<DefaultEvent>& rows) {
    out << "company_id,default_date,kind\n";
    for (const auto& d : rows)
        out << quote_if_needed(d.company_id) << ',' << format_date(d.default_date) << ','
            << to_string(d.kind) << '\n';
}

inline std::vector<RatingRecord> read_ratings(std::istream& in) {
    const std::string what = "ratings.csv";
    Table t(in, {"company_id", "as_of", "agency", "grade"}, what);
    std::vector<RatingRecord> out;
    out.reserve(t.size());
    for (std::size_t r = 0; r < t.size(); ++r) {
        RatingRecord rec;
        rec.company_id = t.cell(r, "company_id");
        rec.as_of = parse_date(t.cell(r, "as_of"));
        const auto agency = parse_agency(t.cell(r, "agency"));
        if (!agency)
            throw std::invalid_argument(what + ": line " + std::to_string(t.line_number(r)) +
                                        ": bad agency '" + t.cell(r, "agency") +
                                        "' (expected SP, MOODYS or FITCH)");
        rec.agency = *agency;
        rec.grade = t.cell(r, "grade");
        if (rec.grade.empty())
            throw std::invalid_argument(what + ": line " + std::to_string(t.line_number(r)) +
                                        ": empty grade");
        out.push_back(std::move(rec));
    }
    return out;
}

inline void write_ratings(std::ostream& out, const std::vector<RatingRecord>& rows) {
    out << "company_id,as_of,agency,grade\n";
    for (const auto& r : rows)
        out << quote_if_needed(r.company_id) << ',' << format_date(r.as_of) << ','
            << to_string(r.agency) << ',' << quote_if_needed(r.grade) << '\n';
}

}  // namespace csv
}  // namespace fscore
