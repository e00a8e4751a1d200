#include "report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace mimetic::cli {

void Report::le(const std::string& name, double value, double limit)
{
    checks_.push_back({name, value, "<=", limit, value <= limit});
}

void Report::ge(const std::string& name, double value, double limit)
{
    checks_.push_back({name, value, ">=", limit, value >= limit});
}

void Report::require(const std::string& name, bool ok) { checks_.push_back({name, ok ? 1.0 : 0.0, "==", 1.0, ok}); }

bool Report::pass() const
{
    for (const auto& c : checks_)
        if (!c.pass) return false;
    return true;
}

json Report::to_json(double wall_seconds) const
{
    json j;
    j["command"] = command_;
    j["pass"] = pass();
    j["config"] = config;
    j["metrics"] = metrics;
    json checks = json::array();
    for (const auto& c : checks_)
        checks.push_back({{"name", c.name}, {"value", number(c.value)}, {"op", c.op}, {"limit", number(c.limit)},
                          {"pass", c.pass}});
    j["checks"] = checks;
    j["warnings"] = warnings_;
    j["files"] = files_;
    j["wall_time_s"] = wall_seconds;
    return j;
}

std::string format_number(double v)
{
    if (std::isnan(v)) return "";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Csv::Csv(const std::filesystem::path& path, const std::vector<std::string>& header) : out_(path), width_(header.size())
{
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    row_text(header);
}

void Csv::row(const std::vector<double>& cells)
{
    std::vector<std::string> text;
    text.reserve(cells.size());
    for (double v : cells) text.push_back(format_number(v));
    row_text(text);
}

void Csv::row_text(const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < width_; ++i) {
        if (i) out_ << ',';
        if (i < cells.size()) out_ << cells[i];
    }
    out_ << '\n';
}

}  // namespace mimetic::cli
