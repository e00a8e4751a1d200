#pragma once
// Run reports and CSV writers for the command-line tool.

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace mimetic::cli {

using json = nlohmann::ordered_json;

struct Check {
    std::string name;
    double value = 0.0;
    std::string op;  // "<=", ">=" or "==" (boolean checks)
    double limit = 0.0;
    bool pass = false;
};

class Report {
public:
    explicit Report(std::string command) : command_(std::move(command)) {}

    json config = json::object();
    json metrics = json::object();

    void le(const std::string& name, double value, double limit);
    void ge(const std::string& name, double value, double limit);
    void require(const std::string& name, bool ok);
    void warn(std::string message) { warnings_.push_back(std::move(message)); }
    void add_file(const std::filesystem::path& p) { files_.push_back(p.string()); }

    const std::string& command() const { return command_; }
    const std::vector<Check>& checks() const { return checks_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    const std::vector<std::string>& files() const { return files_; }
    bool pass() const;
    json to_json(double wall_seconds) const;

private:
    std::string command_;
    std::vector<Check> checks_;
    std::vector<std::string> warnings_;
    std::vector<std::string> files_;
};

// Shortest round-trip text for a double; NaN becomes an empty cell.
std::string format_number(double v);

class Csv {
public:
    // Throws std::runtime_error when the file cannot be created.
    Csv(const std::filesystem::path& path, const std::vector<std::string>& header);
    void row(const std::vector<double>& cells);
    void row_text(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
    std::size_t width_;
};

// JSON numbers cannot hold NaN or infinities; those become null.
json number(double v);

}  // namespace mimetic::cli
