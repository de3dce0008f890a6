#pragma once

// Verification reports: every certified inequality and structural fact is
// recorded with its interval endpoints so a referee can audit a run without
// re-executing it.  Rendering is deterministic byte-for-byte.

#include <cstdio>
#include <string>
#include <vector>

#include "interval.hpp"

namespace unav {

inline std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fmt_interval(const Interval& iv) {
    return "[" + fmt_double(iv.lo) + ", " + fmt_double(iv.hi) + "]";
}

struct ReportEntry {
    enum class Kind { Inequality, Fact, Step, Note } kind = Kind::Note;
    std::string id;        // stable identifier, deduplication key for inequalities
    std::string text;      // human-readable statement
    Verdict verdict = Verdict::True;
    bool has_values = false;
    Interval lhs, rhs;
    std::string relation;  // "<", ">", "<=", ">=", "=="
    bool strict_conclusion = false;
};

class Report {
public:
    void inequality(const std::string& id, const std::string& text, const Interval& lhs,
                    const std::string& rel, const Interval& rhs, Verdict v,
                    bool strict_conclusion = false) {
        ReportEntry e;
        e.kind = ReportEntry::Kind::Inequality;
        e.id = id;
        e.text = text;
        e.lhs = lhs;
        e.rhs = rhs;
        e.relation = rel;
        e.verdict = v;
        e.has_values = true;
        e.strict_conclusion = strict_conclusion;
        entries_.push_back(std::move(e));
    }

    void fact(const std::string& id, const std::string& text, bool holds) {
        ReportEntry e;
        e.kind = ReportEntry::Kind::Fact;
        e.id = id;
        e.text = text;
        e.verdict = holds ? Verdict::True : Verdict::False;
        entries_.push_back(std::move(e));
    }

    void step(const std::string& id, const std::string& text, Verdict v) {
        ReportEntry e;
        e.kind = ReportEntry::Kind::Step;
        e.id = id;
        e.text = text;
        e.verdict = v;
        entries_.push_back(std::move(e));
    }

    void note(const std::string& text) {
        ReportEntry e;
        e.kind = ReportEntry::Kind::Note;
        e.text = text;
        entries_.push_back(std::move(e));
    }

    void merge(const Report& other) {
        entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
    }

    const std::vector<ReportEntry>& entries() const { return entries_; }

    Verdict overall() const {
        Verdict v = Verdict::True;
        for (const auto& e : entries_) {
            if (e.kind == ReportEntry::Kind::Note) continue;
            if (e.verdict == Verdict::False) return Verdict::False;
            if (e.verdict == Verdict::Indeterminate) v = Verdict::Indeterminate;
        }
        return v;
    }

    // Sorted unique ids of all inequality entries (the audit set).
    std::vector<std::string> inequality_ids() const {
        std::vector<std::string> ids;
        for (const auto& e : entries_)
            if (e.kind == ReportEntry::Kind::Inequality) ids.push_back(e.id);
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        return ids;
    }

    std::string render_text() const {
        std::string out;
        for (const auto& e : entries_) {
            switch (e.kind) {
                case ReportEntry::Kind::Note:
                    out += "  # " + e.text + "\n";
                    break;
                case ReportEntry::Kind::Step:
                    out += "[" + std::string(to_string(e.verdict)) + "] " + e.id + ": " +
                           e.text + "\n";
                    break;
                case ReportEntry::Kind::Fact:
                    out += "  (" + std::string(to_string(e.verdict)) + ") " + e.id + ": " +
                           e.text + "\n";
                    break;
                case ReportEntry::Kind::Inequality:
                    out += "  (" + std::string(to_string(e.verdict)) + ") " + e.id + ": " +
                           e.text + "  lhs=" + fmt_interval(e.lhs) + " " + e.relation +
                           " rhs=" + fmt_interval(e.rhs);
                    if (e.strict_conclusion) out += "  [strict: box side > 1]";
                    out += "\n";
                    break;
            }
        }
        return out;
    }

    std::string render_json() const {
        std::string out = "[";
        bool first = true;
        for (const auto& e : entries_) {
            if (!first) out += ",";
            first = false;
            out += "\n  {\"kind\":\"";
            switch (e.kind) {
                case ReportEntry::Kind::Note: out += "note"; break;
                case ReportEntry::Kind::Step: out += "step"; break;
                case ReportEntry::Kind::Fact: out += "fact"; break;
                case ReportEntry::Kind::Inequality: out += "inequality"; break;
            }
            out += "\",\"id\":\"" + e.id + "\",\"text\":\"" + escape(e.text) + "\"";
            if (e.kind != ReportEntry::Kind::Note)
                out += ",\"verdict\":\"" + std::string(to_string(e.verdict)) + "\"";
            if (e.has_values) {
                out += ",\"lhs\":[" + fmt_double(e.lhs.lo) + "," + fmt_double(e.lhs.hi) + "]";
                out += ",\"rel\":\"" + e.relation + "\"";
                out += ",\"rhs\":[" + fmt_double(e.rhs.lo) + "," + fmt_double(e.rhs.hi) + "]";
                if (e.strict_conclusion) out += ",\"strict\":true";
            }
            out += "}";
        }
        out += "\n]\n";
        return out;
    }

private:
    std::vector<ReportEntry> entries_;

    static std::string escape(const std::string& s) {
        std::string r;
        for (char c : s) {
            if (c == '"' || c == '\\') r += '\\';
            if (c == '\n') { r += "\\n"; continue; }
            r += c;
        }
        return r;
    }
};

} // namespace unav
