#include "discocat/diagrams.hpp"

#include <algorithm>
#include <list>
#include <map>
#include <sstream>

namespace discocat {

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = hay.find(needle, pos)) != std::string::npos) {
        count++;
        pos += needle.size();
    }
    return count;
}

struct SvgWriter {
    std::ostringstream body;

    void text(long x, long y, const std::string& cls, const std::string& content,
              const char* anchor = "middle") {
        body << "  <text class=\"" << cls << "\" x=\"" << x << "\" y=\"" << y
             << "\" text-anchor=\"" << anchor << "\">" << xml_escape(content) << "</text>\n";
    }
    void line(long x1, long y1, long x2, long y2, const std::string& cls, bool arrow = false) {
        body << "  <line class=\"" << cls << "\" x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\""
             << x2 << "\" y2=\"" << y2 << "\"";
        if (arrow) body << " marker-end=\"url(#arrow)\"";
        body << "/>\n";
    }
    // Arc between two string endpoints; positive dip bends downward
    // (cup), negative upward (cap).
    void arc(long x1, long x2, long y, long dip, const std::string& cls) {
        body << "  <path class=\"" << cls << "\" d=\"M " << x1 << " " << y << " C " << x1 << " "
             << (y + dip) << ", " << x2 << " " << (y + dip) << ", " << x2 << " " << y
             << "\"/>\n";
    }
    void circle(long cx, long cy, long radius, const std::string& cls) {
        body << "  <circle class=\"" << cls << "\" cx=\"" << cx << "\" cy=\"" << cy
             << "\" r=\"" << radius << "\"/>\n";
    }
    void ellipse(long cx, long cy, long rx, long ry, const std::string& cls) {
        body << "  <ellipse class=\"" << cls << "\" cx=\"" << cx << "\" cy=\"" << cy
             << "\" rx=\"" << rx << "\" ry=\"" << ry << "\"/>\n";
    }
    void rect(long x, long y, long w, long h, const std::string& cls) {
        body << "  <rect class=\"" << cls << "\" x=\"" << x << "\" y=\"" << y << "\" width=\""
             << w << "\" height=\"" << h << "\" rx=\"10\"/>\n";
    }

    std::string finish(long width, long height) {
        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
            << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
        out << "  <defs>\n"
               "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"8\" refY=\"5\" "
               "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">\n"
               "      <path d=\"M 0 0 L 10 5 L 0 10 z\"/>\n"
               "    </marker>\n"
               "  </defs>\n";
        out << "  <style>\n"
               "    text { font-family: monospace; font-size: 13px; }\n"
               "    .word { font-size: 14px; }\n"
               "    .wire, .residual, .clasp-tie { stroke: black; fill: none; }\n"
               "    .cup, .nested-string, .cap { stroke: black; fill: none; }\n"
               "    .clasp { stroke: black; fill: white; }\n"
               "    .blob, .curry-blob { stroke: black; fill: none; }\n"
               "  </style>\n";
        out << body.str();
        out << "</svg>\n";
        return out.str();
    }
};

}  // namespace

// --- Cancellation diagrams -------------------------------------------------

std::string render_cancellation(const Reduction& r, const std::vector<std::string>& words,
                                const std::vector<PregroupType>& word_types) {
    if (words.size() != word_types.size())
        throw DiagramError("one pregroup type per word is required");
    std::vector<SimpleType> flat;
    for (std::size_t w = 0; w < word_types.size(); ++w)
        for (const auto& f : word_types[w].factors) flat.push_back(f);
    if (!(flat == r.input))
        throw DiagramError("reduction input does not align with the words");
    const std::size_t n = flat.size();

    const long unit = 44, margin = 24;
    const long y_word = 22, y_type = 44, y_base = 54;
    auto x_of = [&](std::size_t i) { return margin + static_cast<long>(i) * unit + unit / 2; };

    // Nesting depth per link: 1 for innermost cups, +1 per enclosed link.
    std::vector<long> depth(r.links.size(), 1);
    for (std::size_t a = 0; a < r.links.size(); ++a)
        for (std::size_t b = 0; b < r.links.size(); ++b)
            if (a != b && r.links[a].first < r.links[b].first &&
                r.links[b].second < r.links[a].second)
                depth[a] = std::max(depth[a], depth[b] + 1);
    long max_depth = r.links.empty() ? 0 : 1;
    for (long d : depth) max_depth = std::max(max_depth, d);

    SvgWriter svg;
    std::size_t idx = 0;
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::size_t len = word_types[w].factors.size();
        long cx = len == 0 ? x_of(idx) - unit / 2 : (x_of(idx) + x_of(idx + len - 1)) / 2;
        svg.text(cx, y_word, "word", words[w]);
        idx += len;
    }
    for (std::size_t i = 0; i < n; ++i) svg.text(x_of(i), y_type, "type", to_string(flat[i]));

    for (std::size_t li = 0; li < r.links.size(); ++li) {
        auto [i, j] = r.links[li];
        bool innermost = depth[li] == 1;
        svg.arc(x_of(i), x_of(j), y_base, 26 * depth[li], innermost ? "cup" : "nested-string");
    }

    long y_res = y_base + 26 * max_depth + 18;
    for (std::size_t i : r.residual_indices) {
        svg.line(x_of(i), y_base, x_of(i), y_res, "residual");
        svg.text(x_of(i), y_res + 16, "residual-label", to_string(flat[i]));
    }

    long width = margin * 2 + static_cast<long>(n) * unit;
    long height = y_res + 30;
    return svg.finish(width, height);
}

// --- Baez-Stay clasp diagrams ----------------------------------------------

namespace {

struct BWire {
    std::string label;
    bool up = false;
    long x = 0;            // assigned after ordering
    long birth_band = -1;  // -1: top of diagram
    long death_band = -1;  // band where a cup consumed it; -1: survives
};

struct ClaspMark {
    std::size_t left_wire, right_wire;
    bool circle_on_left;  // the circle sits on the result-side wire
    int depth;
};

struct EvBlob {
    std::vector<std::pair<std::size_t, std::size_t>> cups;
    long band;
};

struct CurryBlob {
    long open_band, close_band;
    std::vector<std::size_t> involved;
    // Cap arcs joining each detached inner wire to its exposed twin.
    std::vector<std::pair<std::size_t, std::size_t>> caps;
    // Root clasp of the introduced implication at the blob exit.
    std::size_t clasp_ant, clasp_res;
    bool circle_on_left;
    bool has_clasp = false;
};

std::size_t axis_count(const LambekType& t) {
    switch (t.kind()) {
        case LambekType::Kind::Basic: return 1;
        case LambekType::Kind::Unit: return 0;
        default: return axis_count(t.lhs()) + axis_count(t.rhs());
    }
}

struct BaezState {
    std::vector<BWire> wires;
    std::vector<ClaspMark> clasps;
    std::vector<EvBlob> blobs;
    std::vector<CurryBlob> curries;
    std::list<std::size_t> order;  // left-to-right wire order
    long next_band = 0;

    // Expands a type into directed wires; flip marks antecedent
    // positions, whose directions reverse.  One clasp per implication
    // node unless suppressed (wires detached inside a blob carry none).
    void expand_type(const LambekType& t, bool flip, int depth, bool with_clasps,
                     std::vector<std::size_t>& out_indices) {
        switch (t.kind()) {
            case LambekType::Kind::Basic: {
                BWire w;
                w.label = t.basic_name();
                w.up = flip;
                wires.push_back(w);
                out_indices.push_back(wires.size() - 1);
                return;
            }
            case LambekType::Kind::Unit:
                return;
            case LambekType::Kind::Product: {
                expand_type(t.lhs(), flip, depth, with_clasps, out_indices);
                expand_type(t.rhs(), flip, depth, with_clasps, out_indices);
                return;
            }
            case LambekType::Kind::LeftImpl:
            case LambekType::Kind::RightImpl: {
                bool antecedent_left = t.kind() == LambekType::Kind::LeftImpl;
                std::vector<std::size_t> left, right;
                expand_type(t.lhs(), antecedent_left ? !flip : flip, depth + 1, with_clasps,
                            left);
                expand_type(t.rhs(), antecedent_left ? flip : !flip, depth + 1, with_clasps,
                            right);
                if (with_clasps && !left.empty() && !right.empty())
                    clasps.push_back({left.back(), right.front(), !antecedent_left, depth});
                out_indices.insert(out_indices.end(), left.begin(), left.end());
                out_indices.insert(out_indices.end(), right.begin(), right.end());
                return;
            }
        }
    }

    std::list<std::size_t>::iterator find_in_order(std::size_t wire) {
        for (auto it = order.begin(); it != order.end(); ++it)
            if (*it == wire) return it;
        return order.end();
    }

    std::vector<std::size_t> walk(const Derivation& d, std::vector<std::size_t> in,
                                  std::vector<std::size_t>& involved) {
        for (std::size_t w : in) involved.push_back(w);
        switch (d.kind()) {
            case Derivation::Kind::Id:
                return in;
            case Derivation::Kind::EvL: {
                std::size_t qa = axis_count(d.type_a());
                EvBlob blob;
                blob.band = next_band++;
                for (std::size_t i = 0; i < qa; ++i) {
                    blob.cups.emplace_back(in[i], in[qa + i]);
                    wires[in[i]].death_band = blob.band;
                    wires[in[qa + i]].death_band = blob.band;
                }
                blobs.push_back(blob);
                return std::vector<std::size_t>(in.begin() + static_cast<std::ptrdiff_t>(2 * qa),
                                                in.end());
            }
            case Derivation::Kind::EvR: {
                std::size_t qa = axis_count(d.type_a());
                std::size_t qb = axis_count(d.type_b());
                EvBlob blob;
                blob.band = next_band++;
                for (std::size_t i = 0; i < qb; ++i) {
                    blob.cups.emplace_back(in[qa + i], in[qa + qb + i]);
                    wires[in[qa + i]].death_band = blob.band;
                    wires[in[qa + qb + i]].death_band = blob.band;
                }
                blobs.push_back(blob);
                return std::vector<std::size_t>(in.begin(),
                                                in.begin() + static_cast<std::ptrdiff_t>(qa));
            }
            case Derivation::Kind::CurryL:
            case Derivation::Kind::NameL:
            case Derivation::Kind::CurryR:
            case Derivation::Kind::NameR: {
                bool left_flavour = d.kind() == Derivation::Kind::CurryL ||
                                    d.kind() == Derivation::Kind::NameL;
                const LambekType& introduced = left_flavour ? d.type_a() : d.type_b();
                CurryBlob curry;
                curry.open_band = next_band++;

                // Inner copy, detached from any clasp, feeds the body in
                // ordinary input position; the exposed twin exits the
                // blob reversed, as the clasped antecedent of the
                // curried implication.  A cap joins each pair.
                std::vector<std::size_t> inner, outer;
                expand_type(introduced, false, 1, false, inner);
                expand_type(introduced, true, 1, true, outer);
                for (std::size_t w : inner) wires[w].birth_band = curry.open_band;
                for (std::size_t w : outer) wires[w].birth_band = curry.open_band;
                for (std::size_t i = 0; i < inner.size(); ++i)
                    curry.caps.emplace_back(inner[i], outer[i]);

                auto anchor = left_flavour
                                  ? (in.empty() ? order.end() : find_in_order(in.front()))
                                  : (in.empty() ? order.end()
                                                : std::next(find_in_order(in.back())));
                for (std::size_t w : inner) order.insert(anchor, w);
                for (std::size_t w : outer) order.insert(anchor, w);

                std::vector<std::size_t> sub;
                if (left_flavour) {
                    sub = inner;
                    sub.insert(sub.end(), in.begin(), in.end());
                } else {
                    sub = in;
                    sub.insert(sub.end(), inner.begin(), inner.end());
                }
                std::vector<std::size_t> sub_involved;
                auto out = walk(d.first(), std::move(sub), sub_involved);

                curry.close_band = next_band++;
                curry.involved = sub_involved;
                for (std::size_t w : inner) curry.involved.push_back(w);
                for (std::size_t w : outer) curry.involved.push_back(w);

                std::vector<std::size_t> result;
                if (left_flavour) {
                    result = outer;
                    result.insert(result.end(), out.begin(), out.end());
                    if (!outer.empty() && !out.empty()) {
                        curry.clasp_ant = outer.back();
                        curry.clasp_res = out.front();
                        curry.circle_on_left = false;  // result group on the right
                        curry.has_clasp = true;
                    }
                } else {
                    result = out;
                    result.insert(result.end(), outer.begin(), outer.end());
                    if (!outer.empty() && !out.empty()) {
                        curry.clasp_ant = outer.front();
                        curry.clasp_res = out.back();
                        curry.circle_on_left = true;  // result group on the left
                        curry.has_clasp = true;
                    }
                }
                for (std::size_t w : curry.involved) involved.push_back(w);
                curries.push_back(curry);
                return result;
            }
            case Derivation::Kind::Compose: {
                auto mid = walk(d.second(), std::move(in), involved);
                return walk(d.first(), std::move(mid), involved);
            }
            case Derivation::Kind::Par: {
                std::size_t split = axis_count(d.first().dom());
                std::vector<std::size_t> left(in.begin(),
                                              in.begin() + static_cast<std::ptrdiff_t>(split));
                std::vector<std::size_t> right(in.begin() + static_cast<std::ptrdiff_t>(split),
                                               in.end());
                auto out = walk(d.first(), std::move(left), involved);
                auto out2 = walk(d.second(), std::move(right), involved);
                out.insert(out.end(), out2.begin(), out2.end());
                return out;
            }
        }
        throw DiagramError("unreachable derivation kind");
    }
};

}  // namespace

std::string render_baez_stay(const Derivation& d, const std::vector<std::string>& words) {
    check(d);
    auto factors = d.dom().factors();
    if (factors.size() != words.size())
        throw DiagramError("expected one domain factor per word, got " +
                           std::to_string(factors.size()) + " factors for " +
                           std::to_string(words.size()) + " words");

    BaezState st;
    std::vector<std::size_t> inputs;
    std::vector<std::pair<std::size_t, std::size_t>> word_span;
    for (const auto& t : factors) {
        std::size_t begin = st.wires.size();
        std::vector<std::size_t> idxs;
        st.expand_type(t, false, 0, true, idxs);
        inputs.insert(inputs.end(), idxs.begin(), idxs.end());
        word_span.emplace_back(begin, st.wires.size());
    }
    int max_clasp_depth = 0;
    for (const auto& c : st.clasps) max_clasp_depth = std::max(max_clasp_depth, c.depth);
    for (std::size_t w = 0; w < st.wires.size(); ++w) st.order.push_back(w);

    std::vector<std::size_t> involved;
    auto outputs = st.walk(d, inputs, involved);
    (void)outputs;

    const long colw = 40, margin = 28;
    long col = 0;
    for (std::size_t w : st.order) st.wires[w].x = margin + (col++) * colw + colw / 2;

    const long y_word = 20;
    const long clasp_base = 36;
    const long y_top = clasp_base + (max_clasp_depth + 1) * 12;
    const long band_h = 64;
    auto band_top = [&](long band) { return y_top + 12 + band * band_h; };
    const long y_bottom = band_top(st.next_band) + 26;

    SvgWriter svg;
    for (std::size_t w = 0; w < words.size(); ++w) {
        auto [b, e] = word_span[w];
        if (b == e) continue;
        long cx = (st.wires[b].x + st.wires[e - 1].x) / 2;
        svg.text(cx, y_word, "word", words[w]);
    }

    for (std::size_t w = 0; w < st.wires.size(); ++w) {
        const BWire& wire = st.wires[w];
        long y1 = wire.birth_band < 0 ? y_top : band_top(wire.birth_band) + 30;
        long y2 = wire.death_band < 0 ? y_bottom : band_top(wire.death_band) + 26;
        if (y2 < y1) y2 = y1 + 8;
        if (wire.up)
            svg.line(wire.x, y2, wire.x, y1, "wire", true);
        else
            svg.line(wire.x, y1, wire.x, y2, "wire", true);
        svg.text(wire.x + 4, y1 + 14, "wire-label", wire.label, "start");
    }

    auto draw_clasp = [&](std::size_t lw_id, std::size_t rw_id, bool circle_on_left, long y) {
        const BWire& lw = st.wires[lw_id];
        const BWire& rw = st.wires[rw_id];
        long cx = circle_on_left ? lw.x : rw.x;
        long ox = circle_on_left ? rw.x : lw.x;
        svg.circle(cx, y, 5, "clasp");
        if (cx < ox)
            svg.line(cx + 5, y, ox, y, "clasp-tie");
        else
            svg.line(ox, y, cx - 5, y, "clasp-tie");
    };

    for (const auto& c : st.clasps) {
        const BWire& lw = st.wires[c.left_wire];
        long y = lw.birth_band < 0 ? clasp_base + c.depth * 12
                                   : band_top(lw.birth_band) + 38 + c.depth * 12;
        draw_clasp(c.left_wire, c.right_wire, c.circle_on_left, y);
    }

    for (const auto& blob : st.blobs) {
        if (blob.cups.empty()) continue;
        long lo = st.wires[blob.cups[0].first].x, hi = lo;
        for (auto [a, b] : blob.cups) {
            lo = std::min({lo, st.wires[a].x, st.wires[b].x});
            hi = std::max({hi, st.wires[a].x, st.wires[b].x});
        }
        long y_cup = band_top(blob.band) + 26;
        for (auto [a, b] : blob.cups) svg.arc(st.wires[a].x, st.wires[b].x, y_cup, 22, "cup");
        svg.ellipse((lo + hi) / 2, y_cup + 4, (hi - lo) / 2 + 18, 26, "blob");
    }

    for (const auto& curry : st.curries) {
        if (curry.involved.empty()) continue;
        long lo = st.wires[curry.involved[0]].x, hi = lo;
        for (std::size_t w : curry.involved) {
            lo = std::min(lo, st.wires[w].x);
            hi = std::max(hi, st.wires[w].x);
        }
        long y1 = band_top(curry.open_band) + 6;
        long y2 = band_top(curry.close_band) + 30;
        svg.rect(lo - 14, y1, (hi - lo) + 28, y2 - y1, "curry-blob");
        long y_birth = band_top(curry.open_band) + 30;
        for (auto [inner, outer] : curry.caps)
            svg.arc(st.wires[inner].x, st.wires[outer].x, y_birth, -18, "cap");
        if (curry.has_clasp)
            draw_clasp(curry.clasp_ant, curry.clasp_res, curry.circle_on_left,
                       band_top(curry.close_band) + 44);
    }

    long width = margin * 2 + static_cast<long>(st.order.size()) * colw;
    return svg.finish(width, y_bottom + 16);
}

DiagramStats svg_stats(const std::string& svg) {
    DiagramStats s;
    s.cups = count_occurrences(svg, "class=\"cup\"");
    s.nested_strings = count_occurrences(svg, "class=\"nested-string\"");
    s.residuals = count_occurrences(svg, "class=\"residual\"");
    s.clasps = count_occurrences(svg, "class=\"clasp\"");
    s.blobs = count_occurrences(svg, "class=\"blob\"");
    s.curry_blobs = count_occurrences(svg, "class=\"curry-blob\"");
    s.wires = count_occurrences(svg, "class=\"wire\"");
    return s;
}

}  // namespace discocat
