/**
 * Embedded player wrapper.
 *
 * The platform page is never loaded; only the privacy-mode embed iframe is,
 * and control flows through postMessage commands so no platform script runs
 * in our page. This is the single non-engine request the UI is allowed.
 */

import { logRequest } from './api';

export interface PlayerAdapter {
    seekToMs(tMs: number): void;
    pause(): void;
    play(): void;
    onTime(listener: (tMs: number) => void): void;
}

export const EMBED_ORIGIN = 'https://www.youtube-nocookie.com';

export function embedUrl(videoId: string): string {
    return `${EMBED_ORIGIN}/embed/${encodeURIComponent(videoId)}?enablejsapi=1&rel=0&modestbranding=1`;
}

export class IframePlayer implements PlayerAdapter {
    private frame: HTMLIFrameElement;
    private listeners: Array<(tMs: number) => void> = [];

    constructor(container: HTMLElement, videoId: string, doc: Document = document) {
        const url = embedUrl(videoId);
        logRequest(url, 'player-embed');
        this.frame = doc.createElement('iframe');
        this.frame.src = url;
        this.frame.allow = 'autoplay; encrypted-media';
        this.frame.className = 'player-frame';
        container.appendChild(this.frame);
        if (typeof window !== 'undefined') {
            window.addEventListener('message', (event) => {
                if (event.origin !== EMBED_ORIGIN) return;
                try {
                    const data = typeof event.data === 'string' ? JSON.parse(event.data) : event.data;
                    const seconds = data?.info?.currentTime;
                    if (typeof seconds === 'number') {
                        const ms = Math.round(seconds * 1000);
                        this.listeners.forEach((listener) => listener(ms));
                    }
                } catch {
                    // ignore unparseable player chatter
                }
            });
            this.frame.addEventListener('load', () => {
                this.post({ event: 'listening', id: 1, channel: 'widget' });
            });
        }
    }

    private post(message: object): void {
        this.frame.contentWindow?.postMessage(JSON.stringify(message), EMBED_ORIGIN);
    }

    private command(func: string, args: unknown[] = []): void {
        this.post({ event: 'command', func, args });
    }

    seekToMs(tMs: number): void {
        this.command('seekTo', [tMs / 1000, true]);
    }

    pause(): void {
        this.command('pauseVideo');
    }

    play(): void {
        this.command('playVideo');
    }

    onTime(listener: (tMs: number) => void): void {
        this.listeners.push(listener);
    }
}

/** Deterministic in-memory player used by tests and air-gapped demos. */
export class FakePlayer implements PlayerAdapter {
    positionMs = 0;
    paused = true;
    private listeners: Array<(tMs: number) => void> = [];

    seekToMs(tMs: number): void {
        this.positionMs = tMs;
        this.emit();
    }

    pause(): void {
        this.paused = true;
    }

    play(): void {
        this.paused = false;
    }

    onTime(listener: (tMs: number) => void): void {
        this.listeners.push(listener);
    }

    emit(): void {
        this.listeners.forEach((listener) => listener(this.positionMs));
    }
}
