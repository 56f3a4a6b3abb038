#include "sumprod/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace sumprod {

using nlohmann::json;

std::string_view status_name(Status s) noexcept {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::constraint_failed: return "constraint-failed";
        case Status::degenerate: return "degenerate";
        case Status::skipped: return "skipped";
    }
    return "?";
}

Status parse_status(std::string_view text) {
    for (Status s : {Status::pass, Status::fail, Status::constraint_failed, Status::degenerate, Status::skipped})
        if (status_name(s) == text) return s;
    throw std::invalid_argument("unknown status '" + std::string(text) + "'");
}

void VerificationReport::decide(double lhs_value, double rhs_value, double slack_value) {
    lhs = lhs_value;
    rhs_shape = rhs_value;
    slack = slack_value;
    fitted_constant = rhs_value > 0 ? lhs_value / rhs_value : 0;
    status = lhs_value <= slack_value * rhs_value ? Status::pass : Status::fail;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void to_json(json& j, const DyadicRecord& d) {
    j = json{{"name", d.name},
             {"k", d.k},
             {"support", d.support},
             {"level", d.level},
             {"bucket", d.bucket},
             {"max_multiplicity", d.max_multiplicity},
             {"bucket_bound", d.bucket_bound},
             {"product", d.product},
             {"energy", d.energy},
             {"certificate", d.certificate},
             {"scaled_certificate", d.scaled_certificate}};
}

void from_json(const json& j, DyadicRecord& d) {
    j.at("name").get_to(d.name);
    j.at("k").get_to(d.k);
    j.at("support").get_to(d.support);
    j.at("level").get_to(d.level);
    j.at("bucket").get_to(d.bucket);
    j.at("max_multiplicity").get_to(d.max_multiplicity);
    j.at("bucket_bound").get_to(d.bucket_bound);
    j.at("product").get_to(d.product);
    j.at("energy").get_to(d.energy);
    j.at("certificate").get_to(d.certificate);
    j.at("scaled_certificate").get_to(d.scaled_certificate);
}

void to_json(json& j, const ConstraintCheck& c) {
    j = json{{"id", c.id},
             {"description", c.description},
             {"product", to_decimal(c.product)},
             {"budget", to_decimal(c.budget)},
             {"margin", c.margin},
             {"satisfied", c.satisfied}};
}

void from_json(const json& j, ConstraintCheck& c) {
    j.at("id").get_to(c.id);
    j.at("description").get_to(c.description);
    c.product = parse_big_count(j.at("product").get<std::string>());
    c.budget = parse_big_count(j.at("budget").get<std::string>());
    j.at("margin").get_to(c.margin);
    j.at("satisfied").get_to(c.satisfied);
}

void to_json(json& j, const VerificationReport& r) {
    j = json{{"lemma", r.lemma},
             {"inputs", r.inputs},
             {"lhs", r.lhs},
             {"rhs_shape", r.rhs_shape},
             {"fitted_constant", r.fitted_constant},
             {"slack", r.slack},
             {"pass", r.pass()},
             {"status", std::string(status_name(r.status))},
             {"notes", r.notes},
             {"exact", r.exact},
             {"dyadic", r.dyadic},
             {"constraints", r.constraints},
             {"elapsed_ms", r.elapsed_ms}};
}

void from_json(const json& j, VerificationReport& r) {
    j.at("lemma").get_to(r.lemma);
    r.inputs = j.at("inputs");
    j.at("lhs").get_to(r.lhs);
    j.at("rhs_shape").get_to(r.rhs_shape);
    j.at("fitted_constant").get_to(r.fitted_constant);
    j.at("slack").get_to(r.slack);
    r.status = parse_status(j.at("status").get<std::string>());
    if (j.at("pass").get<bool>() != r.pass()) throw std::invalid_argument("report pass flag disagrees with status");
    j.at("notes").get_to(r.notes);
    j.at("exact").get_to(r.exact);
    j.at("dyadic").get_to(r.dyadic);
    j.at("constraints").get_to(r.constraints);
    j.at("elapsed_ms").get_to(r.elapsed_ms);
}

}  // namespace sumprod
