// Browser entry point: wires the poller to the page. Everything below
// assumes index.html's container ids.

import { Poller } from "./poll.js";
import { renderHistory, renderLeaderboard, renderStatus } from "./render.js";
import type { HistoryPayload, LeaderboardPayload } from "./types.js";

async function fetchJson(url: string): Promise<unknown> {
  const response = await fetch(url, { headers: { accept: "application/json" } });
  if (!response.ok) {
    throw new Error(`${url} responded ${response.status}`);
  }
  return response.json();
}

function byId(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) {
    throw new Error(`missing #${id} container`);
  }
  return el;
}

export function startApp(baseUrl = ""): Poller {
  const board = byId("leaderboard");
  const status = byId("status");
  const history = byId("history");

  const poller = new Poller({
    url: `${baseUrl}/leaderboard`,
    fetchJson,
    schedule: (fn, delayMs) => {
      window.setTimeout(fn, delayMs);
    },
    onData: (payload) => {
      board.innerHTML = renderLeaderboard(payload as LeaderboardPayload);
    },
    onState: (state) => {
      status.innerHTML = renderStatus(state);
    },
  });

  // Clicking a row loads that team's day-by-day ranking.
  board.addEventListener("click", (event) => {
    const row = (event.target as HTMLElement).closest("tr[data-team]");
    const team = row?.getAttribute("data-team");
    if (!team) {
      return;
    }
    fetchJson(`${baseUrl}/teams/${encodeURIComponent(team)}/history`)
      .then((payload) => {
        history.innerHTML = renderHistory(payload as HistoryPayload);
      })
      .catch(() => {
        history.innerHTML = '<p class="empty-state">History unavailable</p>';
      });
  });

  poller.start();
  return poller;
}

if (typeof document !== "undefined" && document.getElementById("leaderboard")) {
  startApp();
}
