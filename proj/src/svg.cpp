#include "netwalk/svg.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "netwalk/csv.hpp"
#include "netwalk/errors.hpp"
#include "netwalk/experiment.hpp"

namespace netwalk {

namespace {

const char* dyn_color(WalkKind d) {
    switch (d) {
        case WalkKind::RW: return "#1f77b4";
        case WalkKind::RWD: return "#d62728";
        case WalkKind::RWID: return "#2ca02c";
        case WalkKind::TSAW: return "#9467bd";
    }
    return "#000000";
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    return buf;
}

// minimal SVG writer: absolute pixel coordinates, y grows downward
struct Svg {
    std::ostringstream body;
    double width, height;

    Svg(double w, double h) : width(w), height(h) {}

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double sw = 1.0) {
        body << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
             << "\" y2=\"" << fmt(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << sw
             << "\"/>\n";
    }
    void polyline(const std::vector<std::array<double, 2>>& pts, const std::string& stroke,
                  double sw = 1.2) {
        if (pts.empty()) return;
        body << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << sw
             << "\" points=\"";
        for (const auto& p : pts) body << fmt(p[0]) << "," << fmt(p[1]) << " ";
        body << "\"/>\n";
    }
    void polygon(const std::vector<std::array<double, 2>>& pts, const std::string& fill,
                 double opacity) {
        if (pts.empty()) return;
        body << "<polygon fill=\"" << fill << "\" fill-opacity=\"" << opacity
             << "\" stroke=\"none\" points=\"";
        for (const auto& p : pts) body << fmt(p[0]) << "," << fmt(p[1]) << " ";
        body << "\"/>\n";
    }
    void text(double x, double y, const std::string& s, int size = 10,
              const std::string& anchor = "start") {
        body << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" font-size=\"" << size
             << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << s
             << "</text>\n";
    }
    void glyph(Model m, double x, double y, const std::string& color, double r = 3.5,
               const char* cls = "point") {
        switch (m) {
            case Model::ER:
                body << "<circle class=\"" << cls << "\" cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
                     << "\" r=\"" << r << "\" fill=\"" << color << "\"/>\n";
                break;
            case Model::BA:
                body << "<rect class=\"" << cls << "\" x=\"" << fmt(x - r) << "\" y=\""
                     << fmt(y - r) << "\" width=\"" << fmt(2 * r) << "\" height=\"" << fmt(2 * r)
                     << "\" fill=\"" << color << "\"/>\n";
                break;
            case Model::WAX:
                body << "<polygon class=\"" << cls << "\" fill=\"" << color << "\" points=\""
                     << fmt(x) << "," << fmt(y - r) << " " << fmt(x - r) << "," << fmt(y + r)
                     << " " << fmt(x + r) << "," << fmt(y + r) << "\"/>\n";
                break;
            case Model::LFR:
                body << "<polygon class=\"" << cls << "\" fill=\"" << color << "\" points=\""
                     << fmt(x) << "," << fmt(y - r) << " " << fmt(x + r) << "," << fmt(y) << " "
                     << fmt(x) << "," << fmt(y + r) << " " << fmt(x - r) << "," << fmt(y)
                     << "\"/>\n";
                break;
        }
    }

    std::string render() const {
        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
            << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
            << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body.str() << "</svg>\n";
        return out.str();
    }
};

struct Panel {
    double x0, y0, w, h; // plot area in pixels
    double xmin, xmax, ymin, ymax;

    double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
    double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }

    void frame(Svg& svg, const std::string& title) const {
        svg.body << "<g class=\"panel\">\n";
        svg.line(x0, y0, x0, y0 + h, "#404040");
        svg.line(x0, y0 + h, x0 + w, y0 + h, "#404040");
        svg.text(x0 + w / 2, y0 - 4, title, 10, "middle");
        svg.body << "</g>\n";
    }
};

void legend(Svg& svg, double x, double y, const std::vector<WalkKind>& dyns) {
    for (std::size_t i = 0; i < dyns.size(); ++i) {
        const double yy = y + 14.0 * static_cast<double>(i);
        svg.line(x, yy, x + 16, yy, dyn_color(dyns[i]), 2.0);
        svg.text(x + 20, yy + 3, to_string(dyns[i]));
    }
}

// index subset for drawing: curves are smooth, so cap the points per polyline
std::vector<std::size_t> draw_indices(std::size_t size, std::size_t max_points = 300) {
    std::vector<std::size_t> idx;
    if (size == 0) return idx;
    const std::size_t stride = std::max<std::size_t>(1, size / max_points);
    for (std::size_t i = 0; i < size; i += stride) idx.push_back(i);
    if (idx.back() != size - 1) idx.push_back(size - 1);
    return idx;
}

template <typename Row>
std::uint32_t largest_n(const std::vector<Row>& rows) {
    std::uint32_t n = 0;
    for (const auto& r : rows) n = std::max(n, r.n);
    return n;
}

template <typename Row>
void collect_axes(const std::vector<Row>& rows, std::uint32_t n, std::vector<Model>& models,
                  std::vector<double>& ks, std::vector<WalkKind>& dyns) {
    std::set<double> ks_seen;
    for (const auto& r : rows) {
        if (r.n != n) continue;
        if (std::find(models.begin(), models.end(), r.model) == models.end())
            models.push_back(r.model);
        if (std::find(dyns.begin(), dyns.end(), r.dynamics) == dyns.end())
            dyns.push_back(r.dynamics);
        ks_seen.insert(r.k);
    }
    ks.assign(ks_seen.begin(), ks_seen.end());
}

constexpr double kPanelW = 220, kPanelH = 150, kMarginX = 60, kMarginY = 40, kGapX = 24,
                 kGapY = 30;

// grid of model rows x degree columns; draw(row, panel) fills one cell
template <typename DrawFn>
std::string panel_grid(const std::vector<PlotBundle::Curve>& rows, std::uint32_t n,
                       const std::string& y_label, double ymax_hint, DrawFn draw) {
    std::vector<Model> models;
    std::vector<double> ks;
    std::vector<WalkKind> dyns;
    collect_axes(rows, n, models, ks, dyns);
    const std::size_t n_rows = std::max<std::size_t>(1, models.size());
    const std::size_t n_cols = std::max<std::size_t>(1, ks.size());

    Svg svg(kMarginX + n_cols * (kPanelW + kGapX) + 120,
            kMarginY + n_rows * (kPanelH + kGapY) + 20);
    for (std::size_t r = 0; r < models.size(); ++r) {
        for (std::size_t c = 0; c < ks.size(); ++c) {
            Panel panel{kMarginX + c * (kPanelW + kGapX), kMarginY + r * (kPanelH + kGapY),
                        kPanelW, kPanelH, 0, 1, 0, ymax_hint};
            double xmax = 1;
            for (const auto& row : rows)
                if (row.n == n && row.model == models[r] && row.k == ks[c] && !row.steps.empty())
                    xmax = std::max(xmax, row.steps.back());
            panel.xmax = xmax;
            if (ymax_hint <= 0) { // per-panel autoscale
                double ymax = 1e-9;
                for (const auto& row : rows)
                    if (row.n == n && row.model == models[r] && row.k == ks[c])
                        for (double v : row.mean) ymax = std::max(ymax, v);
                panel.ymax = ymax * 1.05;
            }
            std::ostringstream title;
            title << to_string(models[r]) << ", <k>=" << ks[c];
            panel.frame(svg, title.str());
            svg.text(panel.x0, panel.y0 + kPanelH + 14, "0", 8);
            svg.text(panel.x0 + kPanelW, panel.y0 + kPanelH + 14, fmt(panel.xmax), 8, "end");
            svg.text(panel.x0 - 4, panel.y0 + kPanelH, "0", 8, "end");
            svg.text(panel.x0 - 4, panel.y0 + 8, fmt(panel.ymax), 8, "end");
            for (const auto& row : rows)
                if (row.n == n && row.model == models[r] && row.k == ks[c]) draw(row, panel, svg);
        }
    }
    legend(svg, kMarginX + n_cols * (kPanelW + kGapX) + 10, kMarginY + 10, dyns);
    svg.text(14, kMarginY + n_rows * (kPanelH + kGapY) / 2, y_label, 10, "middle");
    return svg.render();
}

void write_svg(const std::string& dir, const char* name, const std::string& content) {
    write_text_file((std::filesystem::path(dir) / name).string(), content);
}

} // namespace

PlotBundle load_plot_bundle(const std::string& dir) {
    namespace fs = std::filesystem;
    const auto file = [&](const char* name) {
        const auto p = fs::path(dir) / name;
        if (!fs::exists(p)) throw UsageError("missing CSV: " + p.string());
        return read_csv_file(p.string());
    };

    PlotBundle bundle;
    {
        const CsvTable t = file("curves.csv");
        const auto cm = t.column("model"), cn = t.column("n"), ck = t.column("k"),
                   cd = t.column("dynamics"), cs = t.column("step"), cme = t.column("mean"),
                   csd = t.column("std");
        std::map<std::string, std::size_t> index;
        for (const auto& row : t.rows) {
            const std::string key = row[cm] + "|" + row[cn] + "|" + row[ck] + "|" + row[cd];
            auto [it, inserted] = index.try_emplace(key, bundle.curves.size());
            if (inserted)
                bundle.curves.push_back({model_from_string(row[cm]),
                                         static_cast<std::uint32_t>(std::stoul(row[cn])),
                                         std::stod(row[ck]), walk_kind_from_string(row[cd]),
                                         {}, {}, {}});
            auto& curve = bundle.curves[it->second];
            curve.steps.push_back(std::stod(row[cs]));
            curve.mean.push_back(std::stod(row[cme]));
            curve.std.push_back(std::stod(row[csd]));
        }
    }
    {
        const CsvTable t = file("features.csv");
        const auto cm = t.column("model"), cn = t.column("n"), ck = t.column("k"),
                   cd = t.column("dynamics");
        for (const auto& row : t.rows) {
            PlotBundle::Features f{model_from_string(row[cm]),
                                   static_cast<std::uint32_t>(std::stoul(row[cn])),
                                   std::stod(row[ck]), walk_kind_from_string(row[cd]), {}};
            for (std::size_t j = cd + 1; j < row.size(); ++j) f.values.push_back(std::stod(row[j]));
            bundle.features.push_back(std::move(f));
        }
    }
    {
        const CsvTable t = file("pca.csv");
        const auto cm = t.column("model"), cn = t.column("n"), ck = t.column("k"),
                   cd = t.column("dynamics"), c1 = t.column("pc1"), c2 = t.column("pc2");
        for (const auto& row : t.rows)
            bundle.pca_points.push_back({model_from_string(row[cm]),
                                         static_cast<std::uint32_t>(std::stoul(row[cn])),
                                         std::stod(row[ck]), walk_kind_from_string(row[cd]),
                                         std::stod(row[c1]), std::stod(row[c2])});
    }
    {
        const CsvTable t = file("variance.csv");
        const auto cr = t.column("ratio");
        for (const auto& row : t.rows) bundle.variance_ratio.push_back(std::stod(row[cr]));
    }
    {
        const CsvTable t = file("profiles.csv");
        const auto ca = t.column("axis"), ce = t.column("epoch"), cl = t.column("loading");
        for (const auto& row : t.rows) {
            auto& dst = row[ca] == "1" ? bundle.profile1 : bundle.profile2;
            dst.emplace_back(std::stoi(row[ce]), std::stod(row[cl]));
        }
    }
    return bundle;
}

PlotBundle plot_bundle_from_result(const ExperimentResult& result) {
    PlotBundle bundle;
    for (const auto& cell : result.cells) {
        if (!cell.ok) continue;
        PlotBundle::Curve curve{cell.meta.model, cell.meta.n, cell.meta.target_k,
                                cell.meta.dynamics, {}, {}, {}};
        for (std::size_t t = 0; t < cell.curve.mean.size(); ++t) {
            curve.steps.push_back(static_cast<double>(t));
            curve.mean.push_back(cell.curve.mean[t]);
            curve.std.push_back(cell.curve.std[t]);
        }
        bundle.curves.push_back(std::move(curve));
        bundle.features.push_back({cell.meta.model, cell.meta.n, cell.meta.target_k,
                                   cell.meta.dynamics, cell.features});
    }
    const PcaBlock* headline = nullptr;
    for (const auto& block : result.pca_blocks) {
        for (std::size_t i = 0; i < block.row_meta.size(); ++i) {
            const auto& meta = block.row_meta[i];
            bundle.pca_points.push_back({meta.model, meta.n, meta.target_k, meta.dynamics,
                                         block.pca.projections[i][0],
                                         block.pca.projections[i][1]});
        }
        if (!headline || block.n > headline->n) headline = &block;
    }
    if (headline) {
        bundle.variance_ratio = headline->pca.explained_variance_ratio;
        for (const auto& [e, l] : axis_profile(headline->pca, 1)) bundle.profile1.emplace_back(e, l);
        for (const auto& [e, l] : axis_profile(headline->pca, 2)) bundle.profile2.emplace_back(e, l);
    }
    return bundle;
}

void emit_plots(const PlotBundle& bundle, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::uint32_t n_curves = largest_n(bundle.curves);

    // coverage curves: mean line with +-1 std band
    write_svg(out_dir, "curves.svg",
              panel_grid(bundle.curves, n_curves, "coverage", 1.0,
                         [](const PlotBundle::Curve& row, const Panel& p, Svg& svg) {
                             const auto idx = draw_indices(row.steps.size());
                             std::vector<std::array<double, 2>> band;
                             band.reserve(2 * idx.size());
                             for (std::size_t i : idx)
                                 band.push_back({p.px(row.steps[i]),
                                                 p.py(std::min(1.0, row.mean[i] + row.std[i]))});
                             for (auto it = idx.rbegin(); it != idx.rend(); ++it)
                                 band.push_back({p.px(row.steps[*it]),
                                                 p.py(std::max(0.0, row.mean[*it] - row.std[*it]))});
                             svg.polygon(band, dyn_color(row.dynamics), 0.15);
                             std::vector<std::array<double, 2>> line;
                             line.reserve(idx.size());
                             for (std::size_t i : idx)
                                 line.push_back({p.px(row.steps[i]), p.py(row.mean[i])});
                             svg.polyline(line, dyn_color(row.dynamics));
                         }));

    // rate curves from the feature rows, re-expressed as curve rows
    std::vector<PlotBundle::Curve> rate_rows;
    for (const auto& f : bundle.features) {
        PlotBundle::Curve row{f.model, f.n, f.k, f.dynamics, {}, {}, {}};
        for (std::size_t j = 0; j < f.values.size(); ++j) {
            row.steps.push_back(100.0 * static_cast<double>(j + 1));
            row.mean.push_back(f.values[j]);
            row.std.push_back(0.0);
        }
        rate_rows.push_back(std::move(row));
    }
    write_svg(out_dir, "rates.svg",
              panel_grid(rate_rows, largest_n(rate_rows), "coverage gain per 100 steps", 0.0,
                         [](const PlotBundle::Curve& row, const Panel& p, Svg& svg) {
                             std::vector<std::array<double, 2>> line;
                             line.reserve(row.steps.size());
                             for (std::size_t i = 0; i < row.steps.size(); ++i)
                                 line.push_back({p.px(row.steps[i]), p.py(row.mean[i])});
                             svg.polyline(line, dyn_color(row.dynamics));
                         }));

    // PCA scatter
    {
        Svg svg(560, 420);
        Panel p{70, 40, 380, 320, -1, 1, -1, 1};
        if (!bundle.pca_points.empty()) {
            p.xmin = p.ymin = 1e300;
            p.xmax = p.ymax = -1e300;
            for (const auto& pt : bundle.pca_points) {
                p.xmin = std::min(p.xmin, pt.pc1);
                p.xmax = std::max(p.xmax, pt.pc1);
                p.ymin = std::min(p.ymin, pt.pc2);
                p.ymax = std::max(p.ymax, pt.pc2);
            }
            const double padx = 0.08 * (p.xmax - p.xmin + 1e-12);
            const double pady = 0.08 * (p.ymax - p.ymin + 1e-12);
            p.xmin -= padx;
            p.xmax += padx;
            p.ymin -= pady;
            p.ymax += pady;
        }
        std::string title = "PCA of rate-curve features";
        if (bundle.variance_ratio.size() >= 2)
            title += " (PC1 " + fmt(100 * bundle.variance_ratio[0]) + "%, PC2 " +
                     fmt(100 * bundle.variance_ratio[1]) + "%)";
        p.frame(svg, title);
        svg.text(p.x0 + p.w / 2, p.y0 + p.h + 24, "PC1", 10, "middle");
        svg.text(p.x0 - 40, p.y0 + p.h / 2, "PC2", 10, "middle");
        for (const auto& pt : bundle.pca_points)
            svg.glyph(pt.model, p.px(pt.pc1), p.py(pt.pc2), dyn_color(pt.dynamics));
        // legend: dynamics colors and model glyphs
        std::vector<WalkKind> dyns{WalkKind::RW, WalkKind::RWD, WalkKind::RWID, WalkKind::TSAW};
        legend(svg, 470, 60, dyns);
        const std::vector<Model> models{Model::ER, Model::BA, Model::WAX, Model::LFR};
        for (std::size_t i = 0; i < models.size(); ++i) {
            const double yy = 130 + 14.0 * static_cast<double>(i);
            svg.glyph(models[i], 478, yy, "#555555", 3.5, "legend");
            svg.text(490, yy + 3, to_string(models[i]));
        }
        write_svg(out_dir, "pca.svg", svg.render());
    }

    // axis profiles
    {
        Svg svg(560, 460);
        const std::array<const std::vector<std::pair<int, double>>*, 2> profiles{
            &bundle.profile1, &bundle.profile2};
        for (int axis = 0; axis < 2; ++axis) {
            Panel p{70, 40.0 + axis * 210.0, 420, 160, 0, 1, -1, 1};
            const auto& prof = *profiles[axis];
            if (!prof.empty()) {
                p.xmax = static_cast<double>(prof.back().first);
                double lim = 1e-9;
                for (const auto& [e, l] : prof) lim = std::max(lim, std::abs(l));
                p.ymin = -1.1 * lim;
                p.ymax = 1.1 * lim;
            }
            p.frame(svg, axis == 0 ? "PCA1 loadings" : "PCA2 loadings");
            svg.line(p.px(p.xmin), p.py(0), p.px(p.xmax), p.py(0), "#bbbbbb");
            std::vector<std::array<double, 2>> line;
            for (const auto& [e, l] : prof)
                line.push_back({p.px(static_cast<double>(e)), p.py(l)});
            svg.polyline(line, axis == 0 ? "#1f77b4" : "#d62728");
            svg.text(p.x0 + p.w / 2, p.y0 + p.h + 24, "epoch", 10, "middle");
        }
        write_svg(out_dir, "profiles.svg", svg.render());
    }

    // all mean curves normalized by their maximum, shaded by PC1
    {
        Svg svg(560, 420);
        Panel p{70, 40, 420, 320, 0, 1, 0, 1.02};
        double pc1_lo = 0, pc1_hi = 0;
        std::map<std::string, double> pc1_of;
        if (!bundle.pca_points.empty()) {
            pc1_lo = 1e300;
            pc1_hi = -1e300;
            for (const auto& pt : bundle.pca_points) {
                const std::string key = std::string(to_string(pt.model)) + "|" +
                                        std::to_string(pt.n) + "|" + format_double(pt.k) + "|" +
                                        to_string(pt.dynamics);
                pc1_of[key] = pt.pc1;
                pc1_lo = std::min(pc1_lo, pt.pc1);
                pc1_hi = std::max(pc1_hi, pt.pc1);
            }
        }
        for (const auto& row : bundle.curves)
            if (!row.steps.empty()) p.xmax = std::max(p.xmax, row.steps.back());
        p.frame(svg, "mean curves normalized by their maximum (shade: PC1)");
        for (const auto& row : bundle.curves) {
            double peak = 0.0;
            for (double v : row.mean) peak = std::max(peak, v);
            if (peak <= 0.0) continue;
            std::string color = "#888888";
            const std::string key = std::string(to_string(row.model)) + "|" +
                                    std::to_string(row.n) + "|" + format_double(row.k) + "|" +
                                    to_string(row.dynamics);
            const auto it = pc1_of.find(key);
            if (it != pc1_of.end() && pc1_hi > pc1_lo) {
                const double t = (it->second - pc1_lo) / (pc1_hi - pc1_lo);
                const int red = static_cast<int>(40 + 200 * t);
                const int blue = static_cast<int>(220 - 180 * t);
                char buf[16];
                std::snprintf(buf, sizeof(buf), "#%02x50%02x", red, blue);
                color = buf;
            }
            const auto idx = draw_indices(row.steps.size());
            std::vector<std::array<double, 2>> line;
            line.reserve(idx.size());
            for (std::size_t i : idx)
                line.push_back({p.px(row.steps[i]), p.py(row.mean[i] / peak)});
            svg.polyline(line, color, 0.8);
        }
        svg.text(p.x0 + p.w / 2, p.y0 + p.h + 24, "step", 10, "middle");
        write_svg(out_dir, "curves_normalized.svg", svg.render());
    }
}

} // namespace netwalk
