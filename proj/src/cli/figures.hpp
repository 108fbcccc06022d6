#pragma once

// Figure datasets with the caption parameters. One CSV per curve.

#include <string>
#include <vector>

namespace cylvdw::cli {

struct CsvFile {
    std::string name;  // file name, e.g. fig3a_R0.8.csv
    std::string text;
};

const std::vector<std::string>& figure_names();

/// points: samples per curve. Throws ConfigError for unknown names or presets.
std::vector<CsvFile> make_figure(const std::string& name, int points = 60, int jobs = 1);

}  // namespace cylvdw::cli
