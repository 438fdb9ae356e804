/** Shared types mirroring the versecraft HTTP API wire format. */
export {};
