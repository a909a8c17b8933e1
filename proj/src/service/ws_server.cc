// Copyright 2026 The sharednav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sharednav/service/ws_server.h"

#include <deque>
#include <optional>
#include <utility>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "sharednav/error.h"

namespace sharednav {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

struct TeleopServer::Impl {
  net::io_context ioc{1};
  tcp::acceptor acceptor{ioc};
  MessageHandler on_message;
  GreetingSource greeting;
  std::shared_ptr<Connection> current;  // touched only on the I/O thread
};

class TeleopServer::Connection
    : public std::enable_shared_from_this<TeleopServer::Connection> {
 public:
  Connection(TeleopServer* owner, tcp::socket socket)
      : owner_(owner), ws_(std::move(socket)) {}

  void Start() {
    ws_.set_option(
        websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
      self->OnAccept(ec);
    });
  }

  void QueueTick(std::string frame) {
    if (pending_tick_) ++owner_->ticks_dropped_;
    pending_tick_ = std::move(frame);
    MaybeWrite();
  }

  void QueueReliable(std::string frame) {
    reliable_.push_back(std::move(frame));
    MaybeWrite();
  }

  bool open() const { return open_; }

  void Close() {
    if (!open_) return;
    open_ = false;
    beast::error_code ignored;
    beast::get_lowest_layer(ws_).socket().close(ignored);
    Detach();
  }

 private:
  void OnAccept(beast::error_code ec) {
    if (ec) {
      Detach();
      return;
    }
    open_ = true;
    owner_->connected_ = true;
    if (owner_->impl_->greeting) QueueReliable(owner_->impl_->greeting());
    DoRead();
  }

  void DoRead() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec,
                                                        std::size_t) {
      self->OnRead(ec);
    });
  }

  void OnRead(beast::error_code ec) {
    if (ec) {
      Close();
      return;
    }
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    try {
      const ClientMessage msg = ParseClientMessage(text);
      if (owner_->impl_->on_message) owner_->impl_->on_message(msg);
    } catch (const Error& e) {
      QueueReliable(SerializeServerMessage(ErrorMessage{e.what()}));
    }
    DoRead();
  }

  void MaybeWrite() {
    if (writing_ || !open_) return;
    if (!reliable_.empty()) {
      out_ = std::move(reliable_.front());
      reliable_.pop_front();
      out_is_tick_ = false;
    } else if (pending_tick_) {
      out_ = std::move(*pending_tick_);
      pending_tick_.reset();
      out_is_tick_ = true;
    } else {
      return;
    }
    writing_ = true;
    ws_.text(true);
    ws_.async_write(net::buffer(out_), [self = shared_from_this()](
                                           beast::error_code ec, std::size_t) {
      self->OnWrite(ec);
    });
  }

  void OnWrite(beast::error_code ec) {
    writing_ = false;
    if (ec) {
      Close();
      return;
    }
    if (out_is_tick_) ++owner_->ticks_sent_;
    MaybeWrite();
  }

  void Detach() {
    if (owner_->impl_->current.get() == this) {
      owner_->impl_->current.reset();
      owner_->connected_ = false;
    }
  }

  TeleopServer* owner_;
  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::string> reliable_;
  std::optional<std::string> pending_tick_;
  std::string out_;
  bool out_is_tick_ = false;
  bool writing_ = false;
  bool open_ = false;
};

TeleopServer::TeleopServer(const std::string& host, uint16_t port,
                           MessageHandler on_message, GreetingSource greeting)
    : impl_(std::make_unique<Impl>()) {
  impl_->on_message = std::move(on_message);
  impl_->greeting = std::move(greeting);
  beast::error_code ec;
  const net::ip::address address = net::ip::make_address(host, ec);
  if (ec) {
    throw Error(ErrorCode::kInvalidArgument, "bad host '" + host + "'");
  }
  const tcp::endpoint endpoint(address, port);
  tcp::acceptor& acc = impl_->acceptor;
  acc.open(endpoint.protocol(), ec);
  if (!ec) acc.set_option(net::socket_base::reuse_address(true), ec);
  if (!ec) acc.bind(endpoint, ec);
  if (!ec) acc.listen(net::socket_base::max_listen_connections, ec);
  if (ec) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot listen on " + host + ":" + std::to_string(port) +
                    ": " + ec.message());
  }
}

TeleopServer::~TeleopServer() { Stop(); }

uint16_t TeleopServer::port() const {
  return impl_->acceptor.local_endpoint().port();
}

void TeleopServer::Start() {
  if (io_thread_.joinable()) return;
  Accept();
  io_thread_ = std::thread([this] { impl_->ioc.run(); });
}

void TeleopServer::Accept() {
  impl_->acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
    if (ec == net::error::operation_aborted) return;
    if (!ec) {
      if (impl_->current) {
        beast::error_code ignored;
        socket.close(ignored);
      } else {
        impl_->current = std::make_shared<Connection>(this, std::move(socket));
        impl_->current->Start();
      }
    }
    Accept();
  });
}

void TeleopServer::Stop() {
  if (!io_thread_.joinable()) return;
  net::post(impl_->ioc, [this] {
    beast::error_code ignored;
    impl_->acceptor.close(ignored);
    if (impl_->current) impl_->current->Close();
    impl_->ioc.stop();
  });
  io_thread_.join();
  connected_ = false;
}

void TeleopServer::PublishTick(std::string frame) {
  net::post(impl_->ioc, [this, frame = std::move(frame)]() mutable {
    if (impl_->current && impl_->current->open()) {
      impl_->current->QueueTick(std::move(frame));
    }
  });
}

void TeleopServer::SendReliable(std::string frame) {
  net::post(impl_->ioc, [this, frame = std::move(frame)]() mutable {
    if (impl_->current && impl_->current->open()) {
      impl_->current->QueueReliable(std::move(frame));
    }
  });
}

}  // namespace sharednav
