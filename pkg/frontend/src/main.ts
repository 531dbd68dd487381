import { frameForKey, metricsFrame } from "./bindings.js";
import { SessionClient } from "./client.js";
import { METRIC_NAMES } from "./protocol.js";
import type { MetricReading, Snapshot } from "./protocol.js";
import { render } from "./render.js";
import { typeText } from "./scripted.js";
import { ViewStore } from "./state.js";

// Page shell: one store, one socket, one render target.  All input goes
// through the bindings table; the slider panel sends a metrics frame per
// completed adjustment.

const app = document.getElementById("app")!;
const urlInput = document.getElementById("server-url") as HTMLInputElement;
const connectBtn = document.getElementById("connect") as HTMLButtonElement;
const scriptInput = document.getElementById("script-text") as HTMLInputElement;
const scriptBtn = document.getElementById("run-script") as HTMLButtonElement;
const sliders = document.getElementById("sliders")!;

const store = new ViewStore();
let client: SessionClient | null = null;
let scriptedSnapshots: Array<(s: Snapshot) => void> = [];

store.subscribe((view) => {
  app.innerHTML = render(view);
  const snap = view.snapshot;
  if (snap !== null && scriptedSnapshots.length > 0) {
    const waiters = scriptedSnapshots;
    scriptedSnapshots = [];
    for (const resolve of waiters) resolve(snap);
  }
});

function connect(): void {
  client?.close();
  const ws = new WebSocket(urlInput.value);
  client = new SessionClient(ws, store, () => {
    client = null;
    store.fail("connection closed — press Connect to reconnect");
  });
  app.innerHTML = render(store.current);
}

document.addEventListener("keydown", (ev) => {
  if (ev.target instanceof HTMLInputElement) return; // typing in a form field
  const frame = frameForKey(ev.key, ev.repeat);
  if (frame === null || client === null) return;
  ev.preventDefault();
  client.sendInput(frame);
});

function sliderValues(): Partial<MetricReading> {
  const values: Partial<MetricReading> = {};
  for (const name of METRIC_NAMES) {
    const el = document.getElementById(`slider-${name}`) as HTMLInputElement | null;
    if (el !== null) values[name] = Number(el.value);
  }
  return values;
}

for (const name of METRIC_NAMES) {
  const label = document.createElement("label");
  label.textContent = name;
  const slider = document.createElement("input");
  slider.type = "range";
  slider.id = `slider-${name}`;
  slider.min = "0";
  slider.max = "1";
  slider.step = "0.05";
  slider.value = "0.5";
  // "change" fires once per adjustment, so one gesture stays one frame
  slider.addEventListener("change", () => client?.sendInput(metricsFrame(sliderValues())));
  label.appendChild(slider);
  sliders.appendChild(label);
}

connectBtn.addEventListener("click", connect);

scriptBtn.addEventListener("click", () => {
  if (client === null) return;
  const live = client;
  const io = {
    send: (frame: Parameters<SessionClient["sendInput"]>[0]) => live.sendInput(frame),
    nextSnapshot: () =>
      new Promise<Snapshot>((resolve) => {
        scriptedSnapshots.push(resolve);
      }),
  };
  const target = scriptInput.value;
  // the store already holds the handshake; hand it straight to the script
  const snap = store.current.snapshot;
  if (snap !== null) queueMicrotask(() => scriptedSnapshots.shift()?.(snap));
  typeText(io, target).catch((err) => store.fail(String(err)));
});

app.innerHTML = render(store.current);
