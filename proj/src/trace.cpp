#include "dtsim/trace.hpp"

#include <fmt/format.h>

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dtsim {

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = line.find(',');
        out.push_back(line.substr(0, comma));
        if (comma == std::string_view::npos) {
            return out;
        }
        line.remove_prefix(comma + 1);
    }
}

std::string opt(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

template <typename T>
T to_number(std::string_view text, int line_no) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw std::runtime_error(fmt::format("line {}: cannot parse '{}' as a number", line_no, text));
    }
    return value;
}

std::optional<double> to_optional(std::string_view text, int line_no) {
    if (text.empty()) {
        return std::nullopt;
    }
    return to_number<double>(text, line_no);
}

/// Calls `row(fields, line_no)` for every data line after checking the header.
template <typename F>
void read_csv(std::istream& is, std::string_view header, std::size_t columns, F&& row) {
    std::string line;
    if (!std::getline(is, line)) {
        throw std::runtime_error("empty CSV input");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != header) {
        throw std::runtime_error(fmt::format("unexpected CSV header '{}', expected '{}'", line, header));
    }
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != columns) {
            throw std::runtime_error(
                fmt::format("line {}: expected {} fields, got {}", line_no, columns, fields.size()));
        }
        row(fields, line_no);
    }
}

template <typename F>
auto rethrow_at(int line_no, F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(fmt::format("line {}: {}", line_no, e.what()));
    }
}

}  // namespace

std::string_view to_string(Event e) {
    switch (e) {
        case Event::None: return "NONE";
        case Event::SwitchOn: return "SWITCH_ON";
        case Event::SwitchOff: return "SWITCH_OFF";
        case Event::Reset: return "RESET";
        case Event::Diverged: return "DIVERGED";
        case Event::SafeMode: return "SAFE_MODE";
    }
    return "?";
}

Event parse_event(std::string_view text) {
    for (auto e : {Event::None, Event::SwitchOn, Event::SwitchOff, Event::Reset, Event::Diverged, Event::SafeMode}) {
        if (text == to_string(e)) {
            return e;
        }
    }
    throw std::invalid_argument(fmt::format("unknown event '{}'", text));
}

std::string_view to_string(UKind k) {
    switch (k) {
        case UKind::U: return "U";
        case UKind::Uprime: return "Uprime";
        case UKind::Mu: return "mu";
    }
    return "?";
}

UKind parse_ukind(std::string_view text) {
    if (text == "U") return UKind::U;
    if (text == "Uprime") return UKind::Uprime;
    if (text == "mu") return UKind::Mu;
    throw std::invalid_argument(fmt::format("unknown u_kind '{}'", text));
}

std::string format_real(double v) { return fmt::format("{:.9g}", v); }

void write_trace_header(std::ostream& os) { os << kTraceHeader << '\n'; }

void write_trace_row(std::ostream& os, const TraceRow& r) {
    os << format_real(r.time) << ',' << format_real(r.t_true) << ',' << opt(r.perceived_mean) << ','
       << opt(r.perceived_std) << ',' << opt(r.u_pt) << ',' << opt(r.u_dt) << ',' << opt(r.u_mitigated) << ','
       << (r.heater_on ? 1 : 0) << ',' << to_string(r.event) << '\n';
}

void write_trace(std::ostream& os, const std::vector<TraceRow>& rows) {
    write_trace_header(os);
    for (const auto& r : rows) {
        write_trace_row(os, r);
    }
}

void write_switch_header(std::ostream& os) { os << kSwitchHeader << '\n'; }

void write_switch_error(std::ostream& os, const SwitchError& e) {
    os << e.run_id << ',' << to_string(e.approach) << ',' << format_real(e.switch_time) << ','
       << format_real(e.perceived) << ',' << format_real(e.actual) << ',' << format_real(e.error) << '\n';
}

void write_uncertainty_header(std::ostream& os) { os << kUncertaintyHeader << '\n'; }

void write_uncertainty(std::ostream& os, const UncertaintySample& s) {
    os << s.run_id << ',' << to_string(s.approach) << ',' << format_real(s.time) << ',' << format_real(s.value)
       << ',' << to_string(s.kind) << '\n';
}

std::vector<TraceRow> read_trace(std::istream& is) {
    std::vector<TraceRow> rows;
    read_csv(is, kTraceHeader, 9, [&](const std::vector<std::string_view>& f, int n) {
        TraceRow r;
        r.time = to_number<double>(f[0], n);
        r.t_true = to_number<double>(f[1], n);
        r.perceived_mean = to_optional(f[2], n);
        r.perceived_std = to_optional(f[3], n);
        r.u_pt = to_optional(f[4], n);
        r.u_dt = to_optional(f[5], n);
        r.u_mitigated = to_optional(f[6], n);
        r.heater_on = to_number<int>(f[7], n) != 0;
        r.event = rethrow_at(n, [&] { return parse_event(f[8]); });
        rows.push_back(r);
    });
    return rows;
}

std::vector<SwitchError> read_switch_errors(std::istream& is) {
    std::vector<SwitchError> out;
    read_csv(is, kSwitchHeader, 6, [&](const std::vector<std::string_view>& f, int n) {
        SwitchError e;
        e.run_id = to_number<int>(f[0], n);
        e.approach = rethrow_at(n, [&] { return parse_approach(f[1]); });
        e.switch_time = to_number<double>(f[2], n);
        e.perceived = to_number<double>(f[3], n);
        e.actual = to_number<double>(f[4], n);
        e.error = to_number<double>(f[5], n);
        out.push_back(e);
    });
    return out;
}

std::vector<UncertaintySample> read_uncertainties(std::istream& is) {
    std::vector<UncertaintySample> out;
    read_csv(is, kUncertaintyHeader, 5, [&](const std::vector<std::string_view>& f, int n) {
        UncertaintySample s;
        s.run_id = to_number<int>(f[0], n);
        s.approach = rethrow_at(n, [&] { return parse_approach(f[1]); });
        s.time = to_number<double>(f[2], n);
        s.value = to_number<double>(f[3], n);
        s.kind = rethrow_at(n, [&] { return parse_ukind(f[4]); });
        out.push_back(s);
    });
    return out;
}

}  // namespace dtsim
