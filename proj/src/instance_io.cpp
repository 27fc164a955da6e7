#include "mrphase/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "mrphase/errors.hpp"

namespace mrphase {

namespace {

constexpr std::string_view kHeader = "#MRPHASE v1";

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> split(std::string_view line) {
    std::vector<Token> out;
    std::size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && (line[k] == ' ' || line[k] == '\t')) ++k;
        if (k == line.size()) break;
        std::size_t start = k;
        while (k < line.size() && line[k] != ' ' && line[k] != '\t') ++k;
        out.push_back(Token{line.substr(start, k - start), start + 1});
    }
    return out;
}

long long parse_integer(const Token& token, std::size_t line, const char* what) {
    long long value = 0;
    auto [end, ec] = std::from_chars(token.text.data(), token.text.data() + token.text.size(), value);
    if (ec != std::errc() || end != token.text.data() + token.text.size())
        throw ParseError(std::string("expected integer ") + what + ", got '" + std::string(token.text) + "'", line,
                         token.column);
    return value;
}

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    // Next line that is neither blank nor a comment; false at end of input.
    bool next_content(std::string_view& line) {
        while (next_raw(line)) {
            auto tokens = split(line);
            if (tokens.empty() || tokens.front().text.front() == '#') continue;
            return true;
        }
        return false;
    }

    bool next_raw(std::string_view& line) {
        if (pos_ >= text_.size()) return false;
        std::size_t end = text_.find('\n', pos_);
        if (end == std::string_view::npos) end = text_.size();
        line = text_.substr(pos_, end - pos_);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos_ = end + 1;
        ++number_;
        return true;
    }

    std::size_t line_number() const { return number_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t number_ = 0;
};

struct ParsedBody {
    std::vector<IndividualRecord> records;
    GenotypeMatrix genotypes;
};

ParsedBody parse_body(LineReader& reader) {
    std::string_view line;
    if (!reader.next_raw(line) || line != kHeader)
        throw ParseError("first line must be '" + std::string(kHeader) + "'", 1, 1);
    if (!reader.next_content(line)) throw ParseError("missing 'n m' line", reader.line_number() + 1, 1);
    auto counts = split(line);
    if (counts.size() != 2) throw ParseError("expected 'n m'", reader.line_number(), 1);
    long long n = parse_integer(counts[0], reader.line_number(), "n");
    long long m = parse_integer(counts[1], reader.line_number(), "m");
    if (n < 1) throw ParseError("n must be at least 1", reader.line_number(), counts[0].column);
    if (m < 1) throw ParseError("m must be at least 1", reader.line_number(), counts[1].column);

    ParsedBody body;
    body.genotypes = GenotypeMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
    for (long long r = 0; r < n; ++r) {
        if (!reader.next_content(line))
            throw ParseError("expected " + std::to_string(n) + " individual records, found " + std::to_string(r),
                             reader.line_number() + 1, 1);
        const std::size_t ln = reader.line_number();
        auto tokens = split(line);
        if (tokens.size() != 4) throw ParseError("expected 'id father_id mother_id genotypes'", ln, 1);
        IndividualRecord rec;
        rec.id = static_cast<int>(parse_integer(tokens[0], ln, "id"));
        rec.father = static_cast<int>(parse_integer(tokens[1], ln, "father_id"));
        rec.mother = static_cast<int>(parse_integer(tokens[2], ln, "mother_id"));
        if (rec.id <= 0) throw ParseError("id must be a positive integer", ln, tokens[0].column);
        if (rec.father < 0) throw ParseError("father_id must be 0 or positive", ln, tokens[1].column);
        if (rec.mother < 0) throw ParseError("mother_id must be 0 or positive", ln, tokens[2].column);
        const auto& g = tokens[3];
        for (std::size_t k = 0; k < g.text.size(); ++k) {
            char c = g.text[k];
            if (c < '0' || c > '2')
                throw ParseError(std::string("genotype character '") + c + "' is not 0, 1 or 2", ln, g.column + k);
            if (k < static_cast<std::size_t>(m)) body.genotypes.set(static_cast<std::size_t>(r), k, static_cast<Genotype>(c - '0'));
        }
        if (g.text.size() != static_cast<std::size_t>(m))
            throw ParseError("genotype string has length " + std::to_string(g.text.size()) + ", expected " +
                                 std::to_string(m),
                             ln, g.column);
        body.records.push_back(rec);
    }
    return body;
}

Instance validated(ParsedBody body) {
    validate_pedigree(body.records, body.genotypes).throw_if_invalid();
    return Instance{Pedigree::from_records(body.records), std::move(body.genotypes)};
}

}  // namespace

Instance parse_instance(std::string_view text) {
    LineReader reader(text);
    auto body = parse_body(reader);
    std::string_view line;
    if (reader.next_content(line)) throw ParseError("unexpected content after the last record", reader.line_number(), 1);
    return validated(std::move(body));
}

std::string serialize_instance(const Pedigree& pedigree, const GenotypeMatrix& genotypes) {
    std::ostringstream out;
    out << kHeader << '\n' << pedigree.size() << ' ' << genotypes.sites() << '\n';
    auto records = pedigree.records();
    for (std::size_t i = 0; i < records.size(); ++i)
        out << records[i].id << ' ' << records[i].father << ' ' << records[i].mother << ' ' << genotypes.row_string(i)
            << '\n';
    return out.str();
}

std::string serialize_truth(const SimulatedInstance& instance) {
    std::ostringstream out;
    out << serialize_instance(instance.pedigree, instance.genotypes);
    const auto& ped = instance.pedigree;
    for (std::size_t i = 0; i < ped.size(); ++i)
        out << "H " << ped[i].id << ' ' << haplotype_string(instance.truth.config[i].maternal) << ' '
            << haplotype_string(instance.truth.config[i].paternal) << '\n';
    for (const auto& e : instance.truth.planted)
        out << "R " << ped[e.child].id << ' ' << side_name(e.side) << ' ' << e.interval.s + 1 << '\n';
    return out.str();
}

SimulatedInstance parse_truth(std::string_view text) {
    LineReader reader(text);
    auto body = parse_body(reader);
    SimulatedInstance out;
    auto instance = validated(std::move(body));
    out.pedigree = std::move(instance.pedigree);
    out.genotypes = std::move(instance.genotypes);
    const auto& ped = out.pedigree;
    const std::size_t m = out.genotypes.sites();
    out.truth.config = HaplotypeConfiguration(ped.size(), m);
    out.truth.path.origins.resize(ped.size());
    std::vector<bool> seen(ped.size(), false);
    std::string_view line;
    while (reader.next_content(line)) {
        const std::size_t ln = reader.line_number();
        auto tokens = split(line);
        auto individual = [&](const Token& t) {
            auto idx = ped.index_of(static_cast<int>(parse_integer(t, ln, "individual id")));
            if (!idx) throw ParseError("unknown individual '" + std::string(t.text) + "'", ln, t.column);
            return *idx;
        };
        if (tokens.front().text == "H" && tokens.size() == 4) {
            std::size_t i = individual(tokens[1]);
            for (int k = 0; k < 2; ++k) {
                const auto& tok = tokens[2 + k];
                if (tok.text.size() != m) throw ParseError("haplotype length differs from m", ln, tok.column);
                try {
                    (k == 0 ? out.truth.config[i].maternal : out.truth.config[i].paternal) = haplotype_from_string(tok.text);
                } catch (const std::invalid_argument&) {
                    throw ParseError("haplotype characters must be 0 or 1", ln, tok.column);
                }
            }
            seen[i] = true;
        } else if (tokens.front().text == "R" && tokens.size() == 4) {
            std::size_t child = individual(tokens[1]);
            auto side = side_from_name(tokens[2].text);
            if (!side) throw ParseError("side must be maternal or paternal", ln, tokens[2].column);
            long long gap = parse_integer(tokens[3], ln, "gap");
            if (gap < 1 || static_cast<std::size_t>(gap) >= m) throw ParseError("gap out of range", ln, tokens[3].column);
            auto s = static_cast<std::size_t>(gap - 1);
            out.truth.planted.push_back(RecombinationEvent{child, *side, Interval{s, s + 1}});
        } else {
            throw ParseError("expected an H or R line", ln, 1);
        }
    }
    for (std::size_t i = 0; i < ped.size(); ++i)
        if (!seen[i]) throw ParseError("missing H line for individual " + std::to_string(ped[i].id), reader.line_number(), 1);
    if (!genotype_consistent(out.truth.config, out.genotypes))
        throw ParseError("truth haplotypes do not match the genotypes", reader.line_number(), 1);
    // Rebuild the inheritance path from the haplotypes and planted breakpoints.
    for (std::size_t j = 0; j < ped.size(); ++j) {
        if (ped.is_founder(j)) continue;
        for (Side side : {Side::maternal, Side::paternal}) {
            auto trace = origin_trace(ped, out.truth.config, j, side);
            auto& seq = out.truth.path.origins[j][static_cast<std::size_t>(side)];
            seq.assign(m, Origin::grand_maternal);
            // Flips only at planted gaps; polarity fixed below.
            Origin start = Origin::grand_maternal;
            for (std::size_t s = 0; s < m; ++s) {
                bool flip_before = false;
                for (const auto& e : out.truth.planted)
                    if (e.child == j && e.side == side && e.interval.t == s) flip_before = true;
                if (flip_before) start = start == Origin::grand_maternal ? Origin::grand_paternal : Origin::grand_maternal;
                seq[s] = start;
            }
            // Choose the global polarity that matches the trace where determined.
            bool mismatch = false;
            for (std::size_t s = 0; s < m; ++s)
                if ((trace.origins[s] == Origin::grand_maternal || trace.origins[s] == Origin::grand_paternal) &&
                    trace.origins[s] != seq[s])
                    mismatch = true;
            if (mismatch)
                for (auto& o : seq) o = o == Origin::grand_maternal ? Origin::grand_paternal : Origin::grand_maternal;
        }
    }
    std::sort(out.truth.planted.begin(), out.truth.planted.end());
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << contents;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace mrphase
