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

#include <cstring>
#include <string>

#include "graphforge/autodiff/autodiff.hpp"
#include "graphforge/graphforge.h"
#include "graphforge/passes/memory_plan.hpp"
#include "graphforge/passes/partition.hpp"
#include "graphforge/passes/pipeline.hpp"
#include "graphforge/runtime/executable.hpp"
#include "graphforge/serialize/serialize.hpp"

using namespace graphforge;

struct gf_function
{
    Function fn;
};

struct gf_tensor
{
    TensorValue value;
};

struct gf_executable
{
    Executable exe;
};

namespace
{
    thread_local std::string last_error;

    gf_status status_of(ErrorCode code)
    {
        return static_cast<gf_status>(static_cast<int>(code) + 1);
    }

    gf_status fail(gf_status status, const std::string& message)
    {
        last_error = message;
        return status;
    }

    template <typename F>
    gf_status guarded(F&& f)
    {
        try
        {
            f();
            last_error.clear();
            return GF_OK;
        }
        catch (const Error& e)
        {
            return fail(status_of(e.code()), e.what());
        }
        catch (const std::exception& e)
        {
            return fail(GF_ERR_INTERNAL, e.what());
        }
    }

    char* copy_string(const std::string& s)
    {
        char* out = new char[s.size() + 1];
        std::memcpy(out, s.c_str(), s.size() + 1);
        return out;
    }

    void require(bool ok, const char* what)
    {
        if (!ok)
        {
            throw Error(ErrorCode::InvalidArgument, what);
        }
    }

    ConvLayout conv_layout_of(gf_conv_layout layout)
    {
        switch (layout)
        {
        case GF_CONV_LAYOUT_IDENTITY: return ConvLayout::Identity;
        case GF_CONV_LAYOUT_CHANNELS_LAST: return ConvLayout::ChannelsLast;
        }
        throw Error(ErrorCode::InvalidArgument, "unknown conv layout");
    }

    std::vector<std::string> split_csv(const char* text)
    {
        return parse_pass_list(text == nullptr ? "" : text);
    }
}

extern "C" {

const char* gf_last_error(void)
{
    return last_error.c_str();
}

const char* gf_status_name(gf_status status)
{
    if (status == GF_OK)
        return "OK";
    if (status == GF_ERR_INTERNAL)
        return "Internal";
    if (status > GF_OK && status < GF_ERR_INTERNAL)
        return to_string(static_cast<ErrorCode>(static_cast<int>(status) - 1));
    return "Unknown";
}

void gf_string_free(char* text)
{
    delete[] text;
}

gf_status gf_function_parse(const char* text, gf_function** out)
{
    return guarded([&] {
        require(text != nullptr && out != nullptr, "null argument");
        *out = new gf_function{parse_function(text)};
    });
}

gf_status gf_function_print(const gf_function* fn, char** out)
{
    return guarded([&] {
        require(fn != nullptr && out != nullptr, "null argument");
        *out = copy_string(print_function(fn->fn));
    });
}

gf_status gf_function_dot(const gf_function* fn, char** out)
{
    return guarded([&] {
        require(fn != nullptr && out != nullptr, "null argument");
        *out = copy_string(export_dot(fn->fn));
    });
}

size_t gf_function_node_count(const gf_function* fn)
{
    return fn == nullptr ? 0 : fn->fn.nodes().size();
}

size_t gf_function_parameter_count(const gf_function* fn)
{
    return fn == nullptr ? 0 : fn->fn.parameters().size();
}

size_t gf_function_result_count(const gf_function* fn)
{
    return fn == nullptr ? 0 : fn->fn.results().size();
}

void gf_function_free(gf_function* fn)
{
    delete fn;
}

gf_status gf_function_differentiate(const gf_function* fn,
                                    const size_t* wrt,
                                    size_t wrt_count,
                                    gf_function** out)
{
    return guarded([&] {
        require(fn != nullptr && out != nullptr, "null argument");
        require(wrt != nullptr || wrt_count == 0, "null argument");
        const auto& params = fn->fn.parameters();
        std::vector<NodeId> ids;
        for (size_t i = 0; i < wrt_count; ++i)
        {
            if (wrt[i] >= params.size())
            {
                throw Error(ErrorCode::InvalidArgument,
                            "no parameter p" + std::to_string(wrt[i]) + "; function has " +
                                std::to_string(params.size()));
            }
            ids.push_back(params[wrt[i]]);
        }
        *out = new gf_function{differentiate(fn->fn, ids)};
    });
}

gf_status gf_function_optimize(const gf_function* fn,
                               const char* passes,
                               gf_conv_layout conv_layout,
                               gf_function** out)
{
    return guarded([&] {
        require(fn != nullptr && out != nullptr, "null argument");
        auto prefs = layout_preferences(conv_layout_of(conv_layout));
        *out = new gf_function{run_pipeline(fn->fn, split_csv(passes), prefs)};
    });
}

gf_status gf_function_partition(const gf_function* fn, const char* supported, char** out)
{
    return guarded([&] {
        require(fn != nullptr && out != nullptr, "null argument");
        std::set<OpKind> kinds;
        for (const auto& name : split_csv(supported))
        {
            auto kind = op_kind_from_string(name);
            if (!kind)
            {
                throw Error(ErrorCode::InvalidArgument, "unknown op \"" + name + "\"");
            }
            kinds.insert(*kind);
        }
        *out = copy_string(format_partitioning(partition(fn->fn, supports_ops(kinds))));
    });
}

gf_status gf_tensor_parse(const char* text, gf_tensor** out)
{
    return guarded([&] {
        require(text != nullptr && out != nullptr, "null argument");
        *out = new gf_tensor{parse_tensor(text)};
    });
}

gf_status gf_tensor_print(const gf_tensor* tensor, char** out)
{
    return guarded([&] {
        require(tensor != nullptr && out != nullptr, "null argument");
        *out = copy_string(print_tensor(tensor->value));
    });
}

gf_status gf_tensor_create(gf_element_type element_type,
                           const size_t* shape,
                           size_t rank,
                           const void* row_major_data,
                           size_t byte_count,
                           gf_tensor** out)
{
    return guarded([&] {
        require(out != nullptr && (shape != nullptr || rank == 0), "null argument");
        require(element_type >= GF_F32 && element_type <= GF_BOOL, "unknown element type");
        TensorDescriptor desc{static_cast<ElementType>(element_type), Shape(std::vector<size_t>(shape, shape + rank))};
        if (byte_count != desc.byte_size())
        {
            throw Error(ErrorCode::ShapeMismatch,
                        "expected " + std::to_string(desc.byte_size()) + " bytes, got " +
                            std::to_string(byte_count));
        }
        require(row_major_data != nullptr || byte_count == 0, "null argument");
        auto begin = static_cast<const std::byte*>(row_major_data);
        *out = new gf_tensor{TensorValue::from_row_major_bytes(
            desc, std::span<const std::byte>(begin, byte_count), Layout::identity(rank))};
    });
}

gf_element_type gf_tensor_element_type(const gf_tensor* tensor)
{
    return tensor == nullptr ? GF_F64 : static_cast<gf_element_type>(tensor->value.element_type());
}

size_t gf_tensor_rank(const gf_tensor* tensor)
{
    return tensor == nullptr ? 0 : tensor->value.shape().rank();
}

size_t gf_tensor_dim(const gf_tensor* tensor, size_t axis)
{
    return tensor != nullptr && axis < tensor->value.shape().rank() ? tensor->value.shape()[axis] : 0;
}

size_t gf_tensor_element_count(const gf_tensor* tensor)
{
    return tensor == nullptr ? 0 : tensor->value.element_count();
}

gf_status gf_tensor_read(const gf_tensor* tensor, void* row_major_data, size_t byte_count)
{
    return guarded([&] {
        require(tensor != nullptr, "null argument");
        auto bytes = tensor->value.row_major_bytes();
        if (byte_count != bytes.size())
        {
            throw Error(ErrorCode::ShapeMismatch,
                        "expected " + std::to_string(bytes.size()) + " bytes, got " +
                            std::to_string(byte_count));
        }
        require(row_major_data != nullptr || byte_count == 0, "null argument");
        if (!bytes.empty())
        {
            std::memcpy(row_major_data, bytes.data(), bytes.size());
        }
    });
}

void gf_tensor_free(gf_tensor* tensor)
{
    delete tensor;
}

gf_status gf_compile(const gf_function* fn, const gf_compile_options* options, gf_executable** out)
{
    return guarded([&] {
        require(fn != nullptr && out != nullptr, "null argument");
        CompileOptions opts;
        if (options != nullptr)
        {
            opts.optimize = options->optimize != 0;
            opts.conv_layout = conv_layout_of(options->conv_layout);
        }
        *out = new gf_executable{compile(fn->fn, opts)};
    });
}

size_t gf_executable_parameter_count(const gf_executable* exe)
{
    return exe == nullptr ? 0 : exe->exe.parameters().size();
}

size_t gf_executable_result_count(const gf_executable* exe)
{
    return exe == nullptr ? 0 : exe->exe.results().size();
}

gf_status gf_executable_call(const gf_executable* exe,
                             const gf_tensor* const* inputs,
                             size_t input_count,
                             gf_tensor** outputs,
                             size_t output_count)
{
    return guarded([&] {
        require(exe != nullptr, "null argument");
        require(inputs != nullptr || input_count == 0, "null argument");
        require(outputs != nullptr || output_count == 0, "null argument");
        if (output_count != exe->exe.results().size())
        {
            throw Error(ErrorCode::InvalidArgument,
                        "expected room for " + std::to_string(exe->exe.results().size()) +
                            " outputs, got " + std::to_string(output_count));
        }
        std::vector<TensorValue> args;
        for (size_t i = 0; i < input_count; ++i)
        {
            require(inputs[i] != nullptr, "null input tensor");
            args.push_back(inputs[i]->value);
        }
        auto results = call(exe->exe, args);
        for (size_t i = 0; i < output_count; ++i)
        {
            outputs[i] = new gf_tensor{std::move(results[i])};
        }
    });
}

gf_status gf_executable_listing(const gf_executable* exe, char** out)
{
    return guarded([&] {
        require(exe != nullptr && out != nullptr, "null argument");
        *out = copy_string(exe->exe.listing());
    });
}

gf_status gf_executable_plan(const gf_executable* exe, char** out)
{
    return guarded([&] {
        require(exe != nullptr && out != nullptr, "null argument");
        *out = copy_string(format_plan(exe->exe.plan(), exe->exe.function()));
    });
}

void gf_executable_free(gf_executable* exe)
{
    delete exe;
}
}
