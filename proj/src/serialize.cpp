#include "ncfa/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ncfa {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    if (s == "inf") return kPInfinity;
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        fail(Errc::ParseError, "not a number: '" + s + "'");
    }
    if (used != s.size()) fail(Errc::ParseError, "trailing characters in number: '" + s + "'");
    return v;
}

// -- element documents ---------------------------------------------------------

std::string element_to_json(const Element& x) {
    json blocks = json::array();
    for (std::size_t k = 0; k < x.block_count(); ++k) {
        const Matrix& m = x.block(k);
        json rows = json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                row.push_back({m(i, j).real(), m(i, j).imag()});
            rows.push_back(std::move(row));
        }
        blocks.push_back(std::move(rows));
    }
    json doc;
    doc["algebra_id"] = x.algebra()->id();
    doc["blocks"] = std::move(blocks);
    return doc.dump(2);
}

Element element_from_json(const ModelPtr& m, const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        fail(Errc::ParseError, std::string("element document: ") + e.what());
    }
    if (!doc.contains("algebra_id") || !doc.contains("blocks"))
        fail(Errc::ParseError, "element document needs algebra_id and blocks");
    const std::string id = doc["algebra_id"].get<std::string>();
    AlgebraPtr alg;
    if (m->plus()->id() == id) alg = m->plus();
    else if (m->minus()->id() == id) alg = m->minus();
    else fail(Errc::AlgebraMismatch, "algebra_id '" + id + "' is not a side of model " + m->id());
    const json& blocks = doc["blocks"];
    if (!blocks.is_array() || blocks.size() != alg->block_count())
        fail(Errc::AlgebraMismatch, "block count mismatch in element document");
    std::vector<Matrix> data;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const int d = alg->dim(k);
        const json& rows = blocks[k];
        if (!rows.is_array() || static_cast<int>(rows.size()) != d)
            fail(Errc::AlgebraMismatch, "row count mismatch in block " + std::to_string(k));
        Matrix mat(d, d);
        for (int i = 0; i < d; ++i) {
            const json& row = rows[i];
            if (!row.is_array() || static_cast<int>(row.size()) != d)
                fail(Errc::AlgebraMismatch, "column count mismatch in block " + std::to_string(k));
            for (int j = 0; j < d; ++j) {
                const json& entry = row[j];
                if (!entry.is_array() || entry.size() != 2)
                    fail(Errc::ParseError, "entries must be [re, im] pairs");
                mat(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
            }
        }
        data.push_back(std::move(mat));
    }
    return Element(alg, std::move(data));
}

// -- irrep tables -----------------------------------------------------------------

std::string irrep_table_to_json(const IrrepTable& t) {
    json doc;
    doc["order"] = t.order;
    doc["labels"] = t.labels;
    doc["table"] = t.table;
    json irreps = json::array();
    for (const auto& rep : t.irreps) {
        json per_element = json::array();
        for (const Matrix& m : rep) {
            json rows = json::array();
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                json row = json::array();
                for (Eigen::Index j = 0; j < m.cols(); ++j)
                    row.push_back({m(i, j).real(), m(i, j).imag()});
                rows.push_back(std::move(row));
            }
            per_element.push_back(std::move(rows));
        }
        irreps.push_back(std::move(per_element));
    }
    doc["irreps"] = std::move(irreps);
    return doc.dump(2);
}

IrrepTable irrep_table_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        fail(Errc::ParseError, std::string("irrep table: ") + e.what());
    }
    IrrepTable t;
    try {
        t.order = doc.at("order").get<int>();
        if (doc.contains("labels")) t.labels = doc["labels"].get<std::vector<std::string>>();
        t.table = doc.at("table").get<std::vector<std::vector<int>>>();
        for (const json& rep : doc.at("irreps")) {
            std::vector<Matrix> mats;
            for (const json& rows : rep) {
                const int d = static_cast<int>(rows.size());
                Matrix m(d, d);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        m(i, j) = Complex(rows[i][j][0].get<double>(), rows[i][j][1].get<double>());
                mats.push_back(std::move(m));
            }
            t.irreps.push_back(std::move(mats));
        }
    } catch (const json::exception& e) {
        fail(Errc::ParseError, std::string("irrep table fields: ") + e.what());
    }
    return t;
}

// -- model configuration ------------------------------------------------------------

ModelPtr model_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        fail(Errc::ParseError, std::string("model config: ") + e.what());
    }
    const std::string kind = doc.value("kind", "");
    if (kind == "cyclic") return cyclic_model(doc.at("n").get<int>());
    if (kind == "abelian") return abelian_model(doc.at("factors").get<std::vector<int>>());
    if (kind == "tl") return tl_model(doc.at("delta").get<double>());
    if (kind == "nonabelian") {
        if (doc.contains("builtin") && doc["builtin"] == "s3") return nonabelian_model(s3());
        if (doc.contains("table")) return nonabelian_model(irrep_table_from_json(doc["table"].dump()));
        if (doc.contains("irrep_table_path"))
            return nonabelian_model(
                irrep_table_from_json(read_text_file(doc["irrep_table_path"].get<std::string>())));
        fail(Errc::ParseError, "nonabelian config needs builtin, table, or irrep_table_path");
    }
    fail(Errc::ParseError, "unknown model kind '" + kind + "'");
}

ModelPtr model_from_spec(const std::string& spec) {
    if (spec == "s3") return nonabelian_model(s3());
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        // maybe a config file path
        std::ifstream in(spec);
        if (in.good()) return model_from_json(read_text_file(spec));
        fail(Errc::ParseError, "model spec '" + spec + "' is neither inline nor a readable file");
    }
    const std::string kind = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    if (kind == "cyclic") {
        int n = 0;
        try {
            n = std::stoi(arg);
        } catch (const std::exception&) {
            fail(Errc::ParseError, "cyclic spec needs an integer order");
        }
        return cyclic_model(n);
    }
    if (kind == "abelian") {
        std::vector<int> factors;
        std::string token;
        std::istringstream ss(arg);
        while (std::getline(ss, token, 'x')) {
            try {
                factors.push_back(std::stoi(token));
            } catch (const std::exception&) {
                fail(Errc::ParseError, "abelian spec needs factors like 2x3");
            }
        }
        return abelian_model(factors);
    }
    if (kind == "tl") return tl_model(parse_double(arg));
    if (kind == "nonabelian") return nonabelian_model(irrep_table_from_json(read_text_file(arg)));
    fail(Errc::ParseError, "unknown model spec '" + spec + "'");
}

// -- CSV ------------------------------------------------------------------------------

namespace {

std::string csv_escape(const std::string& s) {
    // fields in these schemas never contain commas or quotes; keep verbatim
    return s;
}

const char* sense_name(Sense s) {
    switch (s) {
        case Sense::leq: return "leq";
        case Sense::geq: return "geq";
        case Sense::eq: return "eq";
    }
    return "?";
}

Sense sense_from_name(const std::string& s) {
    if (s == "leq") return Sense::leq;
    if (s == "geq") return Sense::geq;
    if (s == "eq") return Sense::eq;
    fail(Errc::ParseError, "unknown sense '" + s + "'");
}

} // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::string check_csv_header() {
    return "name,model,inv_p,inv_q,lhs,rhs,slack,holds,regime,element_hash,seed,sense,"
           "tolerance,identity_dev,equality";
}

std::string check_csv_row(const CheckReport& r) {
    std::ostringstream os;
    os << csv_escape(r.name) << ',' << csv_escape(r.model) << ',' << format_double(r.inv_p) << ','
       << format_double(r.inv_q) << ',' << format_double(r.lhs) << ',' << format_double(r.rhs)
       << ',' << format_double(r.slack) << ',' << (r.holds ? 1 : 0) << ',' << csv_escape(r.regime)
       << ',' << std::hex << r.element_hash << std::dec << ',' << r.seed << ','
       << sense_name(r.sense) << ',' << format_double(r.tolerance) << ','
       << format_double(r.identity_dev) << ',' << (r.equality ? 1 : 0);
    return os.str();
}

CheckReport check_from_csv(const std::string& line) {
    const auto f = split_csv_line(line);
    if (f.size() != 15) fail(Errc::ParseError, "check row needs 15 fields");
    CheckReport r;
    r.name = f[0];
    r.model = f[1];
    r.inv_p = parse_double(f[2]);
    r.inv_q = parse_double(f[3]);
    r.lhs = parse_double(f[4]);
    r.rhs = parse_double(f[5]);
    r.slack = parse_double(f[6]);
    r.holds = f[7] == "1";
    r.regime = f[8];
    r.element_hash = std::stoull(f[9], nullptr, 16);
    r.seed = std::stoull(f[10]);
    r.sense = sense_from_name(f[11]);
    r.tolerance = parse_double(f[12]);
    r.identity_dev = parse_double(f[13]);
    r.equality = f[14] == "1";
    return r;
}

std::string sweep_csv_header() {
    return "inv_p,inv_q,region,K,empirical_C,gap,family,matched,restarts,converged_count,seed";
}

std::string sweep_csv_row(const SweepRow& r) {
    std::ostringstream os;
    os << format_double(r.inv_p) << ',' << format_double(r.inv_q) << ',' << region_name(r.region)
       << ',' << format_double(r.k) << ',' << format_double(r.empirical_c) << ','
       << format_double(r.gap) << ',' << family_name(r.family) << ',' << (r.matched ? 1 : 0)
       << ',' << r.restarts << ',' << r.converged_count << ',' << r.seed;
    return os.str();
}

SweepRow sweep_from_csv(const std::string& line) {
    const auto f = split_csv_line(line);
    if (f.size() != 11) fail(Errc::ParseError, "sweep row needs 11 fields");
    SweepRow r;
    r.inv_p = parse_double(f[0]);
    r.inv_q = parse_double(f[1]);
    r.region = region_from_name(f[2]);
    r.k = parse_double(f[3]);
    r.empirical_c = parse_double(f[4]);
    r.gap = parse_double(f[5]);
    r.family = family_from_name(f[6]);
    r.matched = f[7] == "1";
    r.restarts = std::stoi(f[8]);
    r.converged_count = std::stoi(f[9]);
    r.seed = std::stoull(f[10]);
    return r;
}

std::string validity_csv_header() {
    return "inv_p,inv_q,region,K,min_slack,witness_hash,regime,samples,seed";
}

std::string validity_csv_row(const ValidityRow& r) {
    std::ostringstream os;
    os << format_double(r.inv_p) << ',' << format_double(r.inv_q) << ',' << region_name(r.region)
       << ',' << format_double(r.k) << ',' << format_double(r.min_slack) << ',' << std::hex
       << r.witness_hash << std::dec << ',' << csv_escape(r.regime) << ',' << r.samples << ','
       << r.seed;
    return os.str();
}

ValidityRow validity_from_csv(const std::string& line) {
    const auto f = split_csv_line(line);
    if (f.size() != 9) fail(Errc::ParseError, "validity row needs 9 fields");
    ValidityRow r;
    r.inv_p = parse_double(f[0]);
    r.inv_q = parse_double(f[1]);
    r.region = region_from_name(f[2]);
    r.k = parse_double(f[3]);
    r.min_slack = parse_double(f[4]);
    r.witness_hash = std::stoull(f[5], nullptr, 16);
    r.regime = f[6];
    r.samples = std::stoi(f[7]);
    r.seed = std::stoull(f[8]);
    return r;
}

std::string classification_csv_header() {
    return "family,table_row,matched_rows,norm_p,norm_q,ratio,K,gap";
}

std::string classification_csv_row(const Classification& c) {
    std::ostringstream os;
    os << family_name(c.family) << ',' << c.table_row << ',';
    for (std::size_t i = 0; i < c.matched.size(); ++i)
        os << (i ? ";" : "") << family_name(c.matched[i]);
    os << ',' << format_double(c.norm_p) << ',' << format_double(c.norm_q) << ','
       << format_double(c.ratio) << ',' << format_double(c.k) << ',' << format_double(c.gap);
    return os.str();
}

Classification classification_from_csv(const std::string& line) {
    const auto f = split_csv_line(line);
    if (f.size() != 8) fail(Errc::ParseError, "classification row needs 8 fields");
    Classification c;
    c.family = family_from_name(f[0]);
    c.table_row = std::stoi(f[1]);
    if (!f[2].empty()) {
        std::istringstream ss(f[2]);
        std::string token;
        while (std::getline(ss, token, ';')) c.matched.push_back(family_from_name(token));
    }
    c.norm_p = parse_double(f[3]);
    c.norm_q = parse_double(f[4]);
    c.ratio = parse_double(f[5]);
    c.gap = parse_double(f[7]);
    c.k = parse_double(f[6]);
    return c;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) fail(Errc::ParseError, "cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out.good()) fail(Errc::ParseError, "cannot write file: " + path);
    out << content;
}

} // namespace ncfa
