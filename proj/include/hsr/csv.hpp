#pragma once
#include <charconv>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>

#include "hsr/experiment.hpp"

namespace hsr {

// Renders a double with 17 significant digits (round-trip exact) in %g style.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

// raw.csv: one row per (trial, n, method); absent optional fields render as
// empty cells.
inline void write_raw_csv(std::ostream& out, std::span<const TrialRecord> records) {
    out << "trial,n,method,chosen,gen_error,scale,g_size,f_size,thm2_rhs,thm2_violated\n";
    for (const TrialRecord& rec : records) {
        out << rec.trial << ',' << rec.n << ',' << method_name(rec.method) << ',' << rec.chosen << ','
            << format_double(rec.gen_error) << ',' << format_double(rec.scale) << ',';
        if (rec.g_size) out << *rec.g_size;
        out << ',';
        if (rec.f_size) out << *rec.f_size;
        out << ',';
        if (rec.bound_rhs) out << format_double(*rec.bound_rhs);
        out << ',';
        if (rec.bound_violated) out << (*rec.bound_violated ? '1' : '0');
        out << '\n';
    }
}

// summary.csv: one row per (n, method).
inline void write_summary_csv(std::ostream& out, std::span<const SummaryRow> summary) {
    out << "n,method,mean_gen_error,stderr_gen_error,mean_scale,mean_f_size,thm2_violation_rate\n";
    for (const SummaryRow& row : summary) {
        out << row.n << ',' << method_name(row.method) << ',' << format_double(row.mean_gen_error) << ','
            << format_double(row.stderr_gen_error) << ',' << format_double(row.mean_scale) << ',';
        if (row.mean_f_size) out << format_double(*row.mean_f_size);
        out << ',';
        if (row.bound_violation_rate) out << format_double(*row.bound_violation_rate);
        out << '\n';
    }
}

}  // namespace hsr
