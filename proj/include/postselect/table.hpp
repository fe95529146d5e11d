#pragma once

// Tabular results with CSV and SVG emission. Complex columns are
// serialized as paired <name>_re, <name>_im columns; numbers are written
// with 17 significant digits and a '.' decimal separator, so output is
// byte-deterministic for a fixed configuration.

#include <cstdio>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "postselect/common.hpp"

namespace postselect {

namespace detail {

inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace detail

class ResultTable {
public:
    void add_real_column(std::string name) {
        columns_.push_back({std::move(name), false});
    }
    void add_complex_column(std::string name) {
        columns_.push_back({std::move(name), true});
    }

    // one entry per declared column; real columns take the real part
    void add_row(std::span<const Complex> values) {
        if (values.size() != columns_.size())
            throw usage_error("ResultTable: row width does not match columns");
        std::vector<double> row;
        row.reserve(columns_.size() * 2);
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            row.push_back(values[i].real());
            if (columns_[i].is_complex) row.push_back(values[i].imag());
        }
        rows_.push_back(std::move(row));
    }

    std::vector<std::string> header() const {
        std::vector<std::string> h;
        for (const auto& c : columns_) {
            if (c.is_complex) {
                h.push_back(c.name + "_re");
                h.push_back(c.name + "_im");
            } else {
                h.push_back(c.name);
            }
        }
        return h;
    }

    std::size_t n_rows() const { return rows_.size(); }

    // value by expanded-header column index
    double cell(std::size_t row, std::size_t col) const { return rows_.at(row).at(col); }

    void write_csv(const std::string& path) const {
        std::ofstream out(path);
        if (!out)
            throw usage_error("ResultTable: cannot write '" + path + "'");
        const auto h = header();
        for (std::size_t i = 0; i < h.size(); ++i)
            out << (i ? "," : "") << h[i];
        out << "\n";
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << detail::format_number(row[i]);
            out << "\n";
        }
        if (!out)
            throw usage_error("ResultTable: write to '" + path + "' failed");
    }

    // Single-polyline-per-series line plot, 800x500 viewport, linear axes.
    // x_col / series are expanded-header column indices.
    void write_svg(const std::string& path, std::size_t x_col,
                   std::span<const std::size_t> series) const {
        const auto h = header();
        std::ofstream out(path);
        if (!out)
            throw usage_error("ResultTable: cannot write '" + path + "'");
        constexpr double width = 800.0, height = 500.0;
        constexpr double ml = 70.0, mr = 20.0, mt = 20.0, mb = 50.0;
        double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
        bool first = true;
        for (const auto& row : rows_) {
            const double x = row.at(x_col);
            for (std::size_t s : series) {
                const double y = row.at(s);
                if (first) {
                    xmin = xmax = x;
                    ymin = ymax = y;
                    first = false;
                } else {
                    xmin = std::min(xmin, x); xmax = std::max(xmax, x);
                    ymin = std::min(ymin, y); ymax = std::max(ymax, y);
                }
            }
        }
        if (xmax - xmin < 1e-300) { xmin -= 1.0; xmax += 1.0; }
        if (ymax - ymin < 1e-300) { ymin -= 1.0; ymax += 1.0; }
        auto px = [&](double x) {
            return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
        };
        auto py = [&](double y) {
            return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
        };
        static const char* palette[] = {"#1f6fb4", "#d1495b", "#3c8d53",
                                        "#8a5fb0", "#c97f10", "#4f5d75"};
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
               "viewBox=\"0 0 800 500\">\n";
        out << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
        // axes
        out << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(ymin) << "\" x2=\"" << px(xmax)
            << "\" y2=\"" << py(ymin) << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(ymin) << "\" x2=\"" << px(xmin)
            << "\" y2=\"" << py(ymax) << "\" stroke=\"black\"/>\n";
        for (int i = 0; i <= 4; ++i) {
            const double xv = xmin + (xmax - xmin) * i / 4.0;
            const double yv = ymin + (ymax - ymin) * i / 4.0;
            char label[40];
            std::snprintf(label, sizeof label, "%.4g", xv);
            out << "<text x=\"" << px(xv) << "\" y=\"" << height - mb + 18.0
                << "\" font-size=\"11\" text-anchor=\"middle\">" << label << "</text>\n";
            std::snprintf(label, sizeof label, "%.4g", yv);
            out << "<text x=\"" << ml - 8.0 << "\" y=\"" << py(yv) + 4.0
                << "\" font-size=\"11\" text-anchor=\"end\">" << label << "</text>\n";
        }
        out << "<text x=\"" << (ml + width - mr) / 2.0 << "\" y=\"" << height - 10.0
            << "\" font-size=\"13\" text-anchor=\"middle\">" << h.at(x_col) << "</text>\n";
        std::size_t si = 0;
        for (std::size_t s : series) {
            const char* color = palette[si % 6];
            if (rows_.size() == 1) {
                out << "<circle cx=\"" << px(rows_[0].at(x_col)) << "\" cy=\""
                    << py(rows_[0].at(s)) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
            } else {
                out << "<polyline fill=\"none\" stroke=\"" << color
                    << "\" stroke-width=\"1.5\" points=\"";
                for (const auto& row : rows_)
                    out << px(row.at(x_col)) << "," << py(row.at(s)) << " ";
                out << "\"/>\n";
            }
            out << "<text x=\"" << width - mr - 6.0 << "\" y=\"" << mt + 16.0 * (si + 1)
                << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << color << "\">"
                << h.at(s) << "</text>\n";
            ++si;
        }
        out << "</svg>\n";
        if (!out)
            throw usage_error("ResultTable: write to '" + path + "' failed");
    }

private:
    struct Column {
        std::string name;
        bool is_complex;
    };
    std::vector<Column> columns_;
    std::vector<std::vector<double>> rows_;
};

} // namespace postselect
