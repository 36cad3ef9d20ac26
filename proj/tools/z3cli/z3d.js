#!/usr/bin/env node
// z3d.js - holds one warm z3 (wasm) instance behind a unix socket so that
// short-lived CLI calls do not pay the ~500ms wasm startup cost per query.
//
// Protocol: client sends one JSON header line {"timeout_ms": N} followed by
// the SMT-LIB2 script, then half-closes. We reply with z3's output and close.
// Requests are served strictly one at a time (the wasm build is synchronous).

const net = require('net');
const fs = require('fs');
const os = require('os');
const path = require('path');

const SOCK = process.env.Z3D_SOCKET ||
  path.join(os.tmpdir(), `z3d-${process.getuid()}.sock`);
const PIDFILE = SOCK + '.pid';
const IDLE_EXIT_MS = 15 * 60 * 1000;

async function main() {
  const { init } = require('z3-solver');
  const { Z3 } = await init();

  let lastUse = Date.now();
  let queue = Promise.resolve();

  function evalScript(script, timeoutMs) {
    // Serialize: one context at a time, fresh per request so no state leaks.
    const job = queue.then(async () => {
      Z3.global_param_set('timeout', String(Math.max(1, timeoutMs | 0)));
      const cfg = Z3.mk_config();
      const ctx = Z3.mk_context(cfg);
      try {
        return await Z3.eval_smtlib2_string(ctx, script);
      } finally {
        Z3.del_context(ctx);
      }
    });
    queue = job.catch(() => {});
    return job;
  }

  // allowHalfOpen: the client half-closes after sending its script and then
  // waits for our reply on the same connection.
  const server = net.createServer({ allowHalfOpen: true }, (conn) => {
    const chunks = [];
    conn.on('data', (d) => chunks.push(d));
    conn.on('error', () => {});
    conn.on('end', async () => {
      lastUse = Date.now();
      const raw = Buffer.concat(chunks).toString('utf8');
      const nl = raw.indexOf('\n');
      let timeoutMs = 60000;
      let script = raw;
      if (nl >= 0) {
        try {
          const hdr = JSON.parse(raw.slice(0, nl));
          timeoutMs = hdr.timeout_ms || timeoutMs;
          script = raw.slice(nl + 1);
        } catch (_) { /* no header; treat whole payload as script */ }
      }
      let out;
      try {
        out = await evalScript(script, timeoutMs);
      } catch (e) {
        out = `(error "z3d: ${String(e && e.message || e).replace(/"/g, "'")}")\n`;
      }
      lastUse = Date.now();
      conn.end(out);
    });
  });

  server.on('error', (e) => {
    // Another daemon already owns the socket: quietly defer to it.
    if (e.code === 'EADDRINUSE') process.exit(0);
    throw e;
  });

  server.listen(SOCK, () => {
    fs.writeFileSync(PIDFILE, String(process.pid));
    setInterval(() => {
      if (Date.now() - lastUse > IDLE_EXIT_MS) shutdown();
    }, 60 * 1000).unref();
  });

  function shutdown() {
    try { fs.unlinkSync(SOCK); } catch (_) {}
    try { fs.unlinkSync(PIDFILE); } catch (_) {}
    process.exit(0);
  }
  process.on('SIGTERM', shutdown);
  process.on('SIGINT', shutdown);
}

main().catch((e) => { console.error('z3d:', e); process.exit(1); });
