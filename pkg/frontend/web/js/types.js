// Wire types mirroring the vividmap service JSON responses.
export {};
