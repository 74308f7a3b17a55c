#pragma once

#include <string>
#include <variant>
#include <vector>

namespace crowqed::io {

/// Fixed 12-significant-digit rendering used for every numeric output so
/// that identical configs regenerate byte-identical files.
std::string format_number(double v);

using Cell = std::variant<double, long long, std::string, bool>;

/// Comma-separated table: header row, LF line endings, '.' decimal separator.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<Cell> row);
    std::string to_string() const;

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

/// One series of a line plot; dash pattern distinguishes curves in
/// monochrome renderings.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f3b73";
    bool dashed = false;
};

struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
};

/// Self-contained SVG rendering (axes, ticks, legend); no external assets.
std::string render_svg(const LinePlot& plot, int width = 760, int height = 520);

/// Writes content to path, or to stdout when path is empty.
/// Throws IoError on filesystem failure.
void write_text_output(const std::string& path, const std::string& content);

}  // namespace crowqed::io
