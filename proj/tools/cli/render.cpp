#include "render.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace aberrant::cli {

namespace {

std::string scalar(const Report& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    if (v.is_null()) return "-";
    return v.dump();
}

bool all_scalars(const Report& v) {
    return std::all_of(v.begin(), v.end(), [](const Report& e) { return e.is_primitive(); });
}

bool all_objects(const Report& v) {
    return !v.empty() && std::all_of(v.begin(), v.end(), [](const Report& e) { return e.is_object(); });
}

void table(std::ostringstream& out, const std::string& indent, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s = indent;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c > 0) s += "  ";
            s += cells[c] + std::string(width[c] - cells[c].size(), ' ');
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        out << s << '\n';
    };
    line(header);
    for (const auto& row : rows) line(row);
}

void render(std::ostringstream& out, const Report& node, const std::string& indent) {
    for (auto it = node.begin(); it != node.end(); ++it) {
        const std::string& key = it.key();
        const Report& v = it.value();
        if (v.is_primitive()) {
            out << indent << key << ": " << scalar(v) << '\n';
        } else if (v.is_array() && all_scalars(v)) {
            std::string s;
            for (const auto& e : v) s += (s.empty() ? "" : "  ") + scalar(e);
            out << indent << key << ": " << (s.empty() ? "-" : s) << '\n';
        } else if (v.is_object() && !v.empty() && all_scalars(v)) {
            out << indent << key << ":\n";
            std::vector<std::string> header;
            std::vector<std::string> row;
            for (auto e = v.begin(); e != v.end(); ++e) {
                header.push_back(e.key());
                row.push_back(scalar(e.value()));
            }
            table(out, indent + "  ", header, {row});
        } else if (v.is_array() && all_objects(v)) {
            out << indent << key << ":\n";
            std::vector<std::string> header;
            for (const auto& rec : v) {
                for (auto e = rec.begin(); e != rec.end(); ++e) {
                    if (std::find(header.begin(), header.end(), e.key()) == header.end()) header.push_back(e.key());
                }
            }
            std::vector<std::vector<std::string>> rows;
            for (const auto& rec : v) {
                std::vector<std::string> row;
                for (const auto& h : header) row.push_back(rec.contains(h) ? scalar(rec[h]) : "");
                rows.push_back(std::move(row));
            }
            table(out, indent + "  ", header, rows);
        } else if (v.is_object()) {
            out << indent << key << ":\n";
            render(out, v, indent + "  ");
        } else {
            out << indent << key << ": " << v.dump() << '\n';
        }
    }
}

}  // namespace

std::string render_text(const Report& report) {
    std::ostringstream out;
    render(out, report, "");
    return out.str();
}

}  // namespace aberrant::cli
