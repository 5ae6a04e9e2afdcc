#pragma once

#include "saet/complex.hpp"
#include "saet/extend.hpp"
#include "saet/homlab.hpp"
#include "saet/tube.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace saet::io {

using Json = nlohmann::ordered_json;

// Rationals travel as strings ("3/4"); plain integers are accepted on input.
Json to_json(const Q& q);
Json to_json(const Vec& v);
Q q_from(const Json& j);
Vec vec_from(const Json& j);

Json to_json(const Complex& k);
ComplexPtr complex_from(const Json& j);

// {"complex": ..., "members": [[vertex ids], ...]}
Json to_json(const PLSet& s);
PLSet plset_from(const Json& j);
// members only, against a known complex
Json members_json(const PLSet& s);
PLSet members_from(const ComplexPtr& k, const Json& j);

Json to_json(const Tube& t);
Tube tube_from(const Json& j);

// {"pieces": [{"simplex": [..], "num": form | [forms], "den": ...}]}; the
// domain is stored alongside when `with_domain`.
Json to_json(const PLFFunction& f, bool with_domain = true);
PLFFunction function_from(const Json& j);
PLFFunction function_from(const PLSet& domain, const Json& j);

Json to_json(const PathGerm& p);
PathGerm path_from(const Json& j);

Json to_json(const GermValue& g); // ["a", "b"]
Json simplex_list(const Complex& k, const std::vector<int>& ids);
std::vector<int> simplex_ids(const Complex& k, const Json& j);

Json read_file(const std::string& path); // ParseError on bad JSON
void write_file(const std::string& path, const std::string& text);
std::string sha256_hex(const std::string& bytes);
std::string slurp(const std::string& path);

// A corpus case: a set plus named functions, paths, tubes and expectations.
struct Case {
    std::string name, file, sha256; // sha256 of the file bytes
    Json raw;
    PLSet set;
    std::map<std::string, PLFFunction> functions;
    std::map<std::string, PathGerm> paths;
    std::map<std::string, Tube> tubes;
    Json expect;
};
Case case_from(const Json& j, const std::string& file = {});
Case load_case(const std::string& path);

} // namespace saet::io
