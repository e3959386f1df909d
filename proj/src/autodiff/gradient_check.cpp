// ----------------------------------------------------------------------------
// Copyright 2026 The GraphForge Authors
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
// ----------------------------------------------------------------------------

#include <algorithm>
#include <cmath>

#include "graphforge/autodiff/autodiff.hpp"
#include "graphforge/autodiff/gradient_check.hpp"
#include "graphforge/runtime/executable.hpp"

namespace graphforge
{
    double GradientReport::worst() const
    {
        double worst = 0.0;
        for (double e : max_relative_error)
        {
            worst = std::max(worst, e);
        }
        return worst;
    }

    namespace
    {
        std::vector<double> as_doubles(const TensorValue& t)
        {
            if (t.element_type() == ElementType::F32)
            {
                auto v = t.to_row_major<float>();
                return {v.begin(), v.end()};
            }
            return t.to_row_major<double>();
        }

        TensorValue from_doubles(const TensorValue& like, const std::vector<double>& values)
        {
            if (like.element_type() == ElementType::F32)
            {
                std::vector<float> v(values.begin(), values.end());
                return TensorValue::from_row_major<float>(like.shape(), v, like.layout());
            }
            return TensorValue::from_row_major<double>(like.shape(), values, like.layout());
        }

        double scalar_of(const TensorValue& t) { return as_doubles(t).at(0); }
    }

    GradientReport check_gradient(const Function& fn, std::span<const TensorValue> point, double h)
    {
        if (fn.results().size() != 1 || fn.descriptor(fn.results()[0]).shape.rank() != 0)
        {
            throw Error(ErrorCode::InvalidArgument, "check_gradient needs one scalar result");
        }
        Function grad = differentiate(fn, fn.parameters());
        CompileOptions options{false, ConvLayout::Identity};
        Executable forward = compile(fn, options);
        Executable backward = compile(grad, options);

        std::vector<TensorValue> args(point.begin(), point.end());
        const TensorDescriptor result_desc = fn.descriptor(fn.results()[0]);
        args.push_back(from_doubles(TensorValue(result_desc, Layout::identity(0)), {1.0}));

        GradientReport report;
        report.analytic = call(backward, args);
        args.pop_back();

        for (size_t p = 0; p < args.size(); ++p)
        {
            const TensorValue original = args[p];
            std::vector<double> x = as_doubles(original);
            std::vector<double> analytic = as_doubles(report.analytic[p]);
            std::vector<double> numeric(x.size());
            double worst = 0.0;
            for (size_t i = 0; i < x.size(); ++i)
            {
                const double step = h * std::max(1.0, std::abs(x[i]));
                std::vector<double> probe = x;
                probe[i] = x[i] + step;
                args[p] = from_doubles(original, probe);
                double plus = scalar_of(call(forward, args)[0]);
                probe[i] = x[i] - step;
                args[p] = from_doubles(original, probe);
                double minus = scalar_of(call(forward, args)[0]);
                numeric[i] = (plus - minus) / (2.0 * step);
                double denom = std::max({1.0, std::abs(analytic[i]), std::abs(numeric[i])});
                worst = std::max(worst, std::abs(analytic[i] - numeric[i]) / denom);
            }
            args[p] = original;
            report.numeric.push_back(std::move(numeric));
            report.max_relative_error.push_back(worst);
        }
        return report;
    }
}
