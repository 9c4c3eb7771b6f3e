#include "randheap/trace.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "randheap/errors.hpp"

namespace randheap {

std::optional<std::uint64_t> TraceMeta::get_u64(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    std::uint64_t value = 0;
    auto [p, ec] = std::from_chars(it->second.data(), it->second.data() + it->second.size(), value);
    if (ec != std::errc{} || p != it->second.data() + it->second.size()) return std::nullopt;
    return value;
}

namespace {

[[noreturn]] void fail(std::uint32_t line, const std::string& msg) {
    throw Error(ErrorKind::InvalidTrace, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::int64_t parse_i64(const std::string& tok, std::uint32_t line) {
    std::int64_t value = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || p != tok.data() + tok.size()) fail(line, "bad integer '" + tok + "'");
    return value;
}

std::uint64_t parse_u64(const std::string& tok, std::uint32_t line) {
    std::uint64_t value = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        fail(line, "bad unsigned integer '" + tok + "'");
    return value;
}

void parse_meta(const std::string& body, TraceMeta& meta) {
    for (const auto& tok : split_ws(body)) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const std::string value = tok.substr(eq + 1);
        if (key == "generator")
            meta.generator = value;
        else
            meta.params[key] = value;
    }
}

}  // namespace

Trace parse_trace(std::istream& in) {
    Trace trace;
    std::string line;
    std::uint32_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string meta_prefix = "# meta:";
            if (line.compare(0, meta_prefix.size(), meta_prefix) == 0)
                parse_meta(line.substr(meta_prefix.size()), trace.meta);
            continue;
        }
        const auto toks = split_ws(line);
        if (toks.empty()) continue;
        TraceOp op;
        op.line = lineno;
        if (toks[0] == "I") {
            if (toks.size() != 3) fail(lineno, "I takes 2 arguments");
            op.kind = TraceOp::Kind::Insert;
            op.ext_id = parse_u64(toks[1], lineno);
            op.priority = parse_i64(toks[2], lineno);
        } else if (toks[0] == "D") {
            if (toks.size() != 1) fail(lineno, "D takes no arguments");
            op.kind = TraceOp::Kind::DeleteMin;
        } else if (toks[0] == "K") {
            if (toks.size() != 3) fail(lineno, "K takes 2 arguments");
            op.kind = TraceOp::Kind::DecreaseKey;
            op.ext_id = parse_u64(toks[1], lineno);
            op.priority = parse_i64(toks[2], lineno);
        } else {
            fail(lineno, "unknown opcode '" + toks[0] + "'");
        }
        trace.ops.push_back(op);
    }
    return trace;
}

Trace parse_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidTrace, "cannot open trace file " + path);
    return parse_trace(in);
}

void write_trace(std::ostream& out, const Trace& trace) {
    out << "# meta:";
    if (!trace.meta.generator.empty()) out << " generator=" << trace.meta.generator;
    for (const auto& [key, value] : trace.meta.params) out << ' ' << key << '=' << value;
    out << '\n';
    for (const auto& op : trace.ops) {
        switch (op.kind) {
            case TraceOp::Kind::Insert:
                out << "I " << op.ext_id << ' ' << op.priority << '\n';
                break;
            case TraceOp::Kind::DeleteMin:
                out << "D\n";
                break;
            case TraceOp::Kind::DecreaseKey:
                out << "K " << op.ext_id << ' ' << op.priority << '\n';
                break;
        }
    }
}

void write_trace_file(const std::string& path, const Trace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidTrace, "cannot open output file " + path);
    write_trace(out, trace);
}

std::vector<TraceViolation> validate_trace(const Trace& trace) {
    std::vector<TraceViolation> out;
    std::unordered_set<std::uint64_t> ever_inserted;
    std::unordered_map<std::uint64_t, std::pair<std::int64_t, std::uint64_t>> live;  // ext -> (pri, seq)
    std::set<std::pair<std::pair<std::int64_t, std::uint64_t>, std::uint64_t>> order;  // ((pri,seq), ext)
    std::uint64_t seq = 0;
    std::uint32_t lineno = 0;
    for (const auto& op : trace.ops) {
        ++lineno;
        const std::uint32_t where = op.line ? op.line : lineno;
        switch (op.kind) {
            case TraceOp::Kind::Insert: {
                if (!ever_inserted.insert(op.ext_id).second) {
                    out.push_back({where, "DuplicateInsert",
                                   "extId " + std::to_string(op.ext_id) + " inserted twice"});
                    break;
                }
                live[op.ext_id] = {op.priority, seq};
                order.insert({{op.priority, seq}, op.ext_id});
                ++seq;
                break;
            }
            case TraceOp::Kind::DeleteMin: {
                if (order.empty()) {
                    out.push_back({where, "EmptyDeleteMin", "delete-min on empty heap"});
                    break;
                }
                auto it = order.begin();
                live.erase(it->second);
                order.erase(it);
                break;
            }
            case TraceOp::Kind::DecreaseKey: {
                auto it = live.find(op.ext_id);
                if (it == live.end()) {
                    out.push_back({where, "DeadTarget",
                                   "extId " + std::to_string(op.ext_id) + " not live"});
                    break;
                }
                if (op.priority > it->second.first) {
                    out.push_back({where, "KeyIncrease",
                                   "extId " + std::to_string(op.ext_id) + " priority raised"});
                    break;
                }
                order.erase({{it->second.first, it->second.second}, op.ext_id});
                it->second.first = op.priority;
                order.insert({{op.priority, it->second.second}, op.ext_id});
                break;
            }
        }
    }
    return out;
}

}  // namespace randheap
