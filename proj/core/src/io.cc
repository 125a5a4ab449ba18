// Copyright 2026 The locclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "locclab/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "locclab/error.h"

namespace locclab {

namespace {

struct Token {
    std::string_view text;
    size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        if (i >= line.size()) {
            break;
        }
        size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

/// Splits into lines, numbering from 1, dropping blank and comment lines.
std::vector<std::pair<size_t, std::vector<Token>>> significant_lines(std::string_view text) {
    std::vector<std::pair<size_t, std::vector<Token>>> out;
    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++line_no;
        auto tokens = tokenize(text.substr(pos, end - pos));
        if (!tokens.empty() && tokens.front().text.front() != '#') {
            out.emplace_back(line_no, std::move(tokens));
        }
        if (end == text.size()) {
            break;
        }
        pos = end + 1;
    }
    return out;
}

double parse_real(std::string_view s, size_t line, size_t column, const char *what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ParseError(ErrorCode::kSyntax, line, column,
                         std::string("expected a finite decimal ") + what + ", got '" + std::string(s) + "'");
    }
    return v;
}

int parse_int(std::string_view s, size_t line, size_t column, const char *what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(ErrorCode::kSyntax, line, column,
                         std::string("expected an integer ") + what + ", got '" + std::string(s) + "'");
    }
    return v;
}

Complex parse_complex(const Token &tok, size_t line) {
    std::string_view s = tok.text;
    size_t comma = s.find(',');
    if (s.size() < 5 || s.front() != '(' || s.back() != ')' || comma == std::string_view::npos) {
        throw ParseError(ErrorCode::kSyntax, line, tok.column,
                         "expected a complex literal (re,im), got '" + std::string(s) + "'");
    }
    double re = parse_real(s.substr(1, comma - 1), line, tok.column + 1, "real part");
    double im = parse_real(s.substr(comma + 1, s.size() - comma - 2), line, tok.column + comma + 1, "imaginary part");
    return {re, im};
}

Dims parse_dims_line(const std::vector<Token> &t, size_t line) {
    if (t.size() != 3) {
        throw ParseError(ErrorCode::kSyntax, line, t.front().column, "DIMS takes exactly two integers");
    }
    Dims d{parse_int(t[1].text, line, t[1].column, "dimension"), parse_int(t[2].text, line, t[2].column, "dimension")};
    if (d.a < 1 || d.b < 1 || d.a > kMaxFactorDim || d.b > kMaxFactorDim) {
        throw ParseError(ErrorCode::kDims, line, t[1].column,
                         "dimensions must lie in [1," + std::to_string(kMaxFactorDim) + "]");
    }
    return d;
}

ComplexVector parse_amplitudes(const std::vector<Token> &t, size_t first, size_t count, size_t line,
                               size_t keyword_column) {
    std::vector<Complex> parsed;
    for (size_t i = first; i < t.size(); ++i) {
        parsed.push_back(parse_complex(t[i], line));
    }
    if (parsed.size() != count) {
        throw ParseError(ErrorCode::kDims, line, t.size() > first ? t[first].column : keyword_column,
                         "expected " + std::to_string(count) + " amplitudes, got " + std::to_string(parsed.size()));
    }
    ComplexVector v(static_cast<Eigen::Index>(count));
    for (size_t i = 0; i < count; ++i) {
        v(static_cast<Eigen::Index>(i)) = parsed[i];
    }
    return v;
}

ComplexMatrix row_major(const ComplexVector &v, int d) {
    ComplexMatrix m(d, d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            m(r, c) = v(r * d + c);
        }
    }
    return m;
}

Party parse_party(const Token &tok, size_t line) {
    if (tok.text == "A") {
        return Party::kA;
    }
    if (tok.text == "B") {
        return Party::kB;
    }
    throw ParseError(ErrorCode::kSyntax, line, tok.column, "party must be A or B");
}

}  // namespace

// ---------------------------------------------------------------------------
// Ensembles

Ensemble parse_ensemble(std::string_view text) {
    auto lines = significant_lines(text);
    if (lines.empty()) {
        throw ParseError(ErrorCode::kSyntax, 1, 1, "empty ensemble file");
    }
    const auto &[first_line, first] = lines.front();
    if (first.front().text != "DIMS") {
        throw ParseError(ErrorCode::kSyntax, first_line, first.front().column, "first line must be DIMS");
    }
    const Dims dims = parse_dims_line(first, first_line);

    struct Raw {
        std::string label;
        double prior;
        ComplexVector amps;
        size_t line;
    };
    std::vector<Raw> raw;
    std::set<std::string> labels;
    for (size_t li = 1; li < lines.size(); ++li) {
        const auto &[line, t] = lines[li];
        if (t.front().text == "DIMS") {
            throw ParseError(ErrorCode::kSyntax, line, t.front().column, "DIMS must appear exactly once");
        }
        if (t.front().text != "STATE") {
            throw ParseError(ErrorCode::kSyntax, line, t.front().column,
                             "unknown keyword '" + std::string(t.front().text) + "'");
        }
        if (t.size() < 3) {
            throw ParseError(ErrorCode::kSyntax, line, t.front().column, "STATE needs a label and a prior");
        }
        std::string label(t[1].text);
        if (!labels.insert(label).second) {
            throw ParseError(ErrorCode::kDuplicate, line, t[1].column, "duplicate label '" + label + "'");
        }
        double prior = parse_real(t[2].text, line, t[2].column, "prior");
        if (prior < 0.0) {
            throw ParseError(ErrorCode::kNorm, line, t[2].column, "prior must be nonnegative");
        }
        ComplexVector amps = parse_amplitudes(t, 3, static_cast<size_t>(dims.total()), line, t.front().column);
        double norm = amps.norm();
        if (std::abs(norm - 1.0) > kParseRenormTolerance) {
            throw ParseError(ErrorCode::kNorm, line, t[3].column,
                             "state norm " + std::to_string(norm) + " deviates from 1 by more than 1e-6");
        }
        raw.push_back({std::move(label), prior, amps / norm, line});
    }
    if (raw.empty()) {
        throw ParseError(ErrorCode::kSyntax, lines.back().first, 1, "ensemble has no STATE lines");
    }
    double total = 0.0;
    for (const auto &r : raw) {
        total += r.prior;
    }
    if (std::abs(total - 1.0) > kParseRenormTolerance) {
        throw ParseError(ErrorCode::kNorm, raw.front().line, 1,
                         "priors sum to " + std::to_string(total) + ", deviating from 1 by more than 1e-6");
    }
    std::vector<Ensemble::PureMember> members;
    for (auto &r : raw) {
        members.push_back({r.label, StateVector(r.amps, dims), r.prior / total});
    }
    return Ensemble::from_pure(dims, std::move(members));
}

std::string serialize_ensemble(const Ensemble &ensemble) {
    if (!ensemble.all_pure()) {
        throw Error(ErrorCode::kPrecondition, "only pure ensembles can be serialized");
    }
    std::ostringstream out;
    out << "# locclab ensemble\n";
    out << "DIMS " << ensemble.dims().a << ' ' << ensemble.dims().b << '\n';
    for (const auto &m : ensemble.members()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", m.prior);
        out << "STATE " << m.label << ' ' << buf;
        for (Eigen::Index i = 0; i < m.pure->amplitudes().size(); ++i) {
            out << ' ' << format_complex(m.pure->amplitudes()(i));
        }
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Protocols

LoccProtocol parse_protocol(std::string_view text) {
    auto lines = significant_lines(text);
    if (lines.empty()) {
        throw ParseError(ErrorCode::kSyntax, 1, 1, "empty protocol file");
    }
    const auto &[first_line, first] = lines.front();
    if (first.front().text != "DIMS") {
        throw ParseError(ErrorCode::kSyntax, first_line, first.front().column, "first line must be DIMS");
    }
    const Dims dims = parse_dims_line(first, first_line);

    struct PendingNode {
        std::string id;
        bool leaf;
        Party party = Party::kA;
        std::optional<std::string> guess;
        std::optional<Instrument> instrument;
        bool kraus_form = false;
        std::vector<std::pair<std::string, std::vector<ComplexMatrix>>> kraus;
        size_t line;
    };
    struct PendingEdge {
        std::string parent;
        std::string outcome;
        std::string child;
        size_t line;
        size_t column;
    };
    std::vector<PendingNode> nodes;
    std::map<std::string, size_t> by_id;
    std::vector<PendingEdge> edges;
    int rounds = kDefaultMaxRounds;
    std::optional<std::pair<std::string, size_t>> root;

    auto declare = [&](PendingNode n, const Token &tok) {
        if (by_id.count(n.id) != 0) {
            throw ParseError(ErrorCode::kDuplicate, n.line, tok.column, "duplicate node id '" + n.id + "'");
        }
        by_id[n.id] = nodes.size();
        nodes.push_back(std::move(n));
    };

    for (size_t li = 1; li < lines.size(); ++li) {
        const auto &[line, t] = lines[li];
        const std::string_view kw = t.front().text;
        if (kw == "ROUNDS") {
            if (t.size() != 2) {
                throw ParseError(ErrorCode::kSyntax, line, t.front().column, "ROUNDS takes one integer");
            }
            rounds = parse_int(t[1].text, line, t[1].column, "round count");
        } else if (kw == "NODE") {
            if (t.size() < 4) {
                throw ParseError(ErrorCode::kSyntax, line, t.front().column, "NODE <id> <party> <instrument-spec>");
            }
            PendingNode n{std::string(t[1].text), false, parse_party(t[2], line), std::nullopt, std::nullopt, false, {}, line};
            const int d = dims.of(n.party);
            const std::string_view spec = t[3].text;
            try {
                if (spec == "computational") {
                    if (t.size() != 4) {
                        throw ParseError(ErrorCode::kSyntax, line, t[4].column, "unexpected tokens after 'computational'");
                    }
                    n.instrument = Instrument::computational(d);
                } else if (spec == "basis") {
                    ComplexVector v = parse_amplitudes(t, 4, static_cast<size_t>(d * d), line, t[3].column);
                    n.instrument = Instrument::projective(row_major(v, d));
                } else if (spec == "kraus") {
                    if (t.size() != 4) {
                        throw ParseError(ErrorCode::kSyntax, line, t[4].column, "unexpected tokens after 'kraus'");
                    }
                    n.kraus_form = true;
                } else {
                    throw ParseError(ErrorCode::kSyntax, line, t[3].column,
                                     "unknown instrument spec '" + std::string(spec) + "'");
                }
            } catch (const ParseError &) {
                throw;
            } catch (const Error &e) {
                throw ParseError(e.code(), line, t[3].column, e.what());
            }
            declare(std::move(n), t[1]);
        } else if (kw == "KRAUS") {
            if (t.size() < 3) {
                throw ParseError(ErrorCode::kSyntax, line, t.front().column, "KRAUS <node-id> <outcome> <amplitudes>");
            }
            auto it = by_id.find(std::string(t[1].text));
            if (it == by_id.end() || !nodes[it->second].kraus_form) {
                throw ParseError(ErrorCode::kSyntax, line, t[1].column,
                                 "KRAUS must follow a 'kraus' NODE declaration of '" + std::string(t[1].text) + "'");
            }
            auto &n = nodes[it->second];
            const int d = dims.of(n.party);
            ComplexVector v = parse_amplitudes(t, 3, static_cast<size_t>(d * d), line, t[2].column);
            std::string outcome(t[2].text);
            auto slot = std::find_if(n.kraus.begin(), n.kraus.end(), [&](const auto &p) { return p.first == outcome; });
            if (slot == n.kraus.end()) {
                n.kraus.emplace_back(outcome, std::vector<ComplexMatrix>{row_major(v, d)});
            } else {
                slot->second.push_back(row_major(v, d));
            }
        } else if (kw == "LEAF") {
            if (t.size() != 3) {
                throw ParseError(ErrorCode::kSyntax, line, t.front().column, "LEAF <id> <guess | ->");
            }
            PendingNode n{std::string(t[1].text), true, Party::kA, std::nullopt, std::nullopt, false, {}, line};
            if (t[2].text != "-") {
                n.guess = std::string(t[2].text);
            }
            declare(std::move(n), t[1]);
        } else if (kw == "EDGE") {
            if (t.size() != 4) {
                throw ParseError(ErrorCode::kSyntax, line, t.front().column, "EDGE <parent> <outcome> <child>");
            }
            edges.push_back({std::string(t[1].text), std::string(t[2].text), std::string(t[3].text), line, t[1].column});
        } else if (kw == "ROOT") {
            if (t.size() != 2) {
                throw ParseError(ErrorCode::kSyntax, line, t.front().column, "ROOT <id>");
            }
            root = std::make_pair(std::string(t[1].text), line);
        } else if (kw == "DIMS") {
            throw ParseError(ErrorCode::kSyntax, line, t.front().column, "DIMS must appear exactly once");
        } else {
            throw ParseError(ErrorCode::kSyntax, line, t.front().column, "unknown keyword '" + std::string(kw) + "'");
        }
    }
    if (nodes.empty()) {
        throw ParseError(ErrorCode::kSyntax, lines.back().first, 1, "protocol declares no nodes");
    }

    LoccProtocol protocol(dims, rounds);
    for (auto &n : nodes) {
        try {
            if (n.leaf) {
                protocol.add_leaf(n.guess, n.id);
                continue;
            }
            if (n.kraus_form) {
                if (n.kraus.empty()) {
                    throw Error(ErrorCode::kMalformedProtocol, "kraus node '" + n.id + "' has no KRAUS lines");
                }
                std::vector<InstrumentBranch> branches;
                for (auto &[outcome, ks] : n.kraus) {
                    branches.push_back({outcome, QuantumOperation(std::move(ks), outcome)});
                }
                n.instrument = Instrument(std::move(branches));
            }
            protocol.add_measurement(n.party, std::move(*n.instrument), n.id);
        } catch (const Error &e) {
            throw ParseError(e.code(), n.line, 1, e.what());
        }
    }
    for (const auto &e : edges) {
        auto p = by_id.find(e.parent);
        auto c = by_id.find(e.child);
        if (p == by_id.end() || c == by_id.end()) {
            throw ParseError(ErrorCode::kMalformedProtocol, e.line, e.column, "edge references an undeclared node");
        }
        try {
            protocol.connect(p->second, e.outcome, c->second);
        } catch (const Error &err) {
            throw ParseError(err.code(), e.line, e.column, err.what());
        }
    }
    if (root) {
        auto r = by_id.find(root->first);
        if (r == by_id.end()) {
            throw ParseError(ErrorCode::kMalformedProtocol, root->second, 1, "ROOT names an undeclared node");
        }
        protocol.set_root(r->second);
    }
    try {
        protocol.validate();
    } catch (const Error &e) {
        throw ParseError(e.code(), lines.back().first, 1, e.what());
    }
    return protocol;
}

std::string serialize_protocol(const LoccProtocol &protocol) {
    std::ostringstream out;
    out << "# locclab protocol\n";
    out << "DIMS " << protocol.dims().a << ' ' << protocol.dims().b << '\n';
    out << "ROUNDS " << protocol.max_rounds() << '\n';
    const auto &nodes = protocol.nodes();
    for (const auto &n : nodes) {
        if (n.kind == ProtocolNode::Kind::kLeaf) {
            out << "LEAF " << n.id << ' ' << (n.guess ? *n.guess : "-") << '\n';
            continue;
        }
        out << "NODE " << n.id << ' ' << party_name(n.party) << " kraus\n";
        for (const auto &b : n.instrument->branches()) {
            for (const auto &k : b.operation.kraus()) {
                out << "KRAUS " << n.id << ' ' << b.outcome;
                for (Eigen::Index r = 0; r < k.rows(); ++r) {
                    for (Eigen::Index c = 0; c < k.cols(); ++c) {
                        out << ' ' << format_complex(k(r, c));
                    }
                }
                out << '\n';
            }
        }
    }
    for (const auto &n : nodes) {
        for (const auto &[outcome, child] : n.children) {
            out << "EDGE " << n.id << ' ' << outcome << ' ' << nodes[child].id << '\n';
        }
    }
    out << "ROOT " << nodes.at(protocol.root()).id << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Reports

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    std::string s(buf);
    if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') {
        s.erase(0, 1);
    }
    return s;
}

std::string format_complex(Complex z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", z.real() == 0.0 ? 0.0 : z.real(), z.imag() == 0.0 ? 0.0 : z.imag());
    return buf;
}

Report::Report(std::string title) : title_(std::move(title)) {
}

void Report::header(const std::string &key, const std::string &value) {
    headers_.emplace_back(key, value);
}

void Report::table(std::vector<std::string> columns) {
    tables_.push_back({std::move(columns), {}});
}

void Report::row(std::vector<std::string> cells) {
    if (tables_.empty()) {
        throw Error(ErrorCode::kInternal, "row added before any table");
    }
    cells.resize(tables_.back().columns.size());
    tables_.back().rows.push_back(std::move(cells));
}

void Report::set(const std::string &key, const std::string &value) {
    for (const auto &[k, v] : machine_) {
        if (k == key) {
            throw Error(ErrorCode::kInternal, "duplicate report key '" + key + "'");
        }
    }
    if (key.empty() || key.find('=') != std::string::npos || value.find('\n') != std::string::npos) {
        throw Error(ErrorCode::kInternal, "malformed report entry '" + key + "'");
    }
    machine_.emplace_back(key, value);
}

void Report::set(const std::string &key, const char *value) {
    set(key, std::string(value));
}

void Report::set(const std::string &key, double value) {
    set(key, format_real(value));
}

void Report::set(const std::string &key, bool value) {
    set(key, std::string(value ? "true" : "false"));
}

void Report::set_count(const std::string &key, uint64_t value) {
    set(key, std::to_string(value));
}

std::string Report::machine_section() const {
    std::string out;
    for (const auto &[k, v] : machine_) {
        out += k + "=" + v + "\n";
    }
    return out;
}

std::string Report::render(bool machine_only) const {
    if (machine_only) {
        return machine_section();
    }
    std::ostringstream out;
    out << "== " << title_ << " ==\n";
    size_t width = 0;
    for (const auto &[k, v] : headers_) {
        width = std::max(width, k.size());
    }
    for (const auto &[k, v] : headers_) {
        out << k << std::string(width - k.size(), ' ') << " : " << v << '\n';
    }
    for (const auto &t : tables_) {
        if (t.columns.empty()) {
            continue;
        }
        out << '\n';
        std::vector<size_t> widths(t.columns.size());
        for (size_t c = 0; c < t.columns.size(); ++c) {
            widths[c] = t.columns[c].size();
            for (const auto &r : t.rows) {
                widths[c] = std::max(widths[c], r[c].size());
            }
        }
        auto emit = [&](const std::vector<std::string> &cells) {
            std::string line;
            for (size_t c = 0; c < cells.size(); ++c) {
                line += cells[c];
                if (c + 1 < cells.size()) {
                    line += std::string(widths[c] - cells[c].size() + 2, ' ');
                }
            }
            out << line << '\n';
        };
        emit(t.columns);
        std::vector<std::string> rule;
        for (size_t w : widths) {
            rule.push_back(std::string(w, '-'));
        }
        emit(rule);
        for (const auto &r : t.rows) {
            emit(r);
        }
    }
    out << "\n[machine]\n" << machine_section();
    return out.str();
}

}  // namespace locclab
