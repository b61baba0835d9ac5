#ifndef WiFi_h
#define WiFi_h

// WiFi shield driver: station and access point modes.

#define WL_IDLE_STATUS 0
#define WL_CONNECTED 3
#define WL_CONNECT_FAILED 4

class WiFiClass {
public:
  static int begin(const char *ssid, const char *passphrase);
  static void disconnect();
  static unsigned char status();
  static long RSSI();
  static const char *SSID();
};

class WiFiClient {
public:
  int connect(const char *host, unsigned int port);
  int available();
  int read();
  void stop();
};

#endif
