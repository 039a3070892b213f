#pragma once

#include <map>
#include <string>

#include "finsler/metric.hpp"

namespace finsler {

// Metric-definition DSL.
//
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := number | 'i' | symbol | call | '(' expr ')' | param-name
//   symbol := ('z'|'eta'|'zbar'|'etabar') '[' index ']'
//   call   := ('sqrt'|'abs2'|'log'|'conj'|'sum') '(' args ')'
//
// sum(k, body) binds index variable k over 1..dim and is expanded at parse
// time. Indices are 1-based in source, 0-based in the tree. Bare
// identifiers resolve against the params table.

ExprPtr parse_expr(const std::string& text, int dim,
                   const std::map<std::string, double>& params = {});

/// Key/value metric file: fields name, dim, form (L|F), domain, body,
/// params (comma-separated key=value). '#' starts a comment.
MetricExpr parse_metric_file(const std::string& path);
MetricExpr parse_metric_string(const std::string& text, const std::string& source_name = "<string>");

}  // namespace finsler
