#!/usr/bin/env node
// z3cli.js FILE - file-based SMT-LIB2 solver front end backed by z3 (wasm).
// Behaves like `z3 FILE`: prints the solver output for the script and exits.
// The actual solving happens in a shared daemon (z3d.js) that this client
// starts on demand; see that file for the wire protocol.

const net = require('net');
const fs = require('fs');
const os = require('os');
const path = require('path');
const { spawn } = require('child_process');

const SOCK = process.env.Z3D_SOCKET ||
  path.join(os.tmpdir(), `z3d-${process.getuid()}.sock`);
const PIDFILE = SOCK + '.pid';

const file = process.argv.slice(2).find((a) => !a.startsWith('-'));
if (!file) {
  console.error('usage: z3cli.js FILE.smt2');
  process.exit(2);
}
const script = fs.readFileSync(file, 'utf8');
const timeoutMs = parseInt(process.env.RANKFORGE_SOLVER_TIMEOUT_MS || '60000', 10);

function connectOnce() {
  return new Promise((resolve, reject) => {
    const conn = net.createConnection(SOCK);
    conn.on('connect', () => resolve(conn));
    conn.on('error', reject);
  });
}

function spawnDaemon() {
  const child = spawn(process.execPath, [path.join(__dirname, 'z3d.js')], {
    detached: true,
    stdio: 'ignore',
  });
  child.unref();
}

function killStaleDaemon() {
  try {
    const pid = parseInt(fs.readFileSync(PIDFILE, 'utf8'), 10);
    if (pid > 1) process.kill(pid, 'SIGKILL');
  } catch (_) {}
  try { fs.unlinkSync(SOCK); } catch (_) {}
  try { fs.unlinkSync(PIDFILE); } catch (_) {}
}

async function main() {
  let conn = null;
  let spawned = false;
  for (let attempt = 0; attempt < 120 && !conn; attempt++) {
    try {
      conn = await connectOnce();
    } catch (e) {
      if (e.code === 'ECONNREFUSED') killStaleDaemon(); // dead leftover socket
      if (!spawned) { spawnDaemon(); spawned = true; }
      await new Promise((r) => setTimeout(r, 100));
    }
  }
  if (!conn) {
    console.error('z3cli: could not reach solver daemon');
    process.exit(2);
  }
  conn.write(JSON.stringify({ timeout_ms: timeoutMs }) + '\n');
  conn.end(script);
  const chunks = [];
  conn.on('data', (d) => chunks.push(d));
  conn.on('close', () => {
    process.stdout.write(Buffer.concat(chunks));
    process.exit(0);
  });
  conn.on('error', () => {
    console.error('z3cli: connection lost');
    process.exit(2);
  });
}

main();
