#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gevrey/cli/report.hpp"

namespace gevrey::cli {
namespace {

std::string number_cell(double x)
{
    if (std::isnan(x)) {
        return "";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

std::string text_cell(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

void write_row(std::ostream& os, const std::string& id, const report_row& r)
{
    os << text_cell(id) << ',' << text_cell(r.kind) << ',' << text_cell(r.vector) << ',' << number_cell(r.t) << ','
       << number_cell(r.beta) << ',' << text_cell(r.flavor) << ',' << text_cell(r.member) << ','
       << number_cell(r.s_low) << ',' << number_cell(r.s_high) << ',' << text_cell(r.status) << ','
       << (r.n ? std::to_string(*r.n) : std::string()) << ',' << number_cell(r.value) << ',' << number_cell(r.re)
       << ',' << number_cell(r.im) << ',' << text_cell(r.detail) << '\n';
}

}  // namespace

std::string to_csv(const run_report& report)
{
    std::ostringstream os;
    os << "# gsl-report format=" << format_version << " tool=" << tool_version << '\n';
    os << "job_id,kind,vector,t,beta,flavor,member,s_low,s_high,status,n,value,re,im,detail\n";
    for (const auto& r : report.rows) {
        write_row(os, report.job_id, r);
    }
    if (report.include_timings) {
        for (const auto& [phase, seconds] : report.timings) {
            report_row r;
            r.kind = "timing";
            r.status = phase;
            r.value = seconds;
            write_row(os, report.job_id, r);
        }
    }
    return os.str();
}

void emit_csv(const run_report& report, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << to_csv(report);
    out.flush();
    if (!out) {
        throw std::runtime_error("write failed for " + path);
    }
}

}  // namespace gevrey::cli
