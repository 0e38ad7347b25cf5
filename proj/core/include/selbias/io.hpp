#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "selbias/model.hpp"
#include "selbias/scenarios.hpp"

namespace selbias::io {

enum class DataFormat { Auto, Subject, Summary };

DataFormat parse_format(std::string_view name);

// `group,value` (subject level) or `group,n,mean,sd` (summary level). Lines
// starting with '#' and blank lines are skipped. Errors carry line numbers.
Dataset read_dataset(std::istream& in, DataFormat format = DataFormat::Auto);
Dataset read_dataset_file(const std::filesystem::path& path, DataFormat format = DataFormat::Auto);

// Shortest round-trip representation of every double.
std::string write_dataset(const Dataset& data);

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);
double parse_double(std::string_view text);

// Flat key = value scenario config; grammar in docs/scenario-format.md.
Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_file(const std::filesystem::path& path);
std::string write_scenario(const Scenario& scenario);

}  // namespace selbias::io
