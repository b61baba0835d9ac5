#ifndef Ethernet_h
#define Ethernet_h

// Wiznet W5100 ethernet client and server support.

class IPAddress;

class EthernetClass {
public:
  static int begin(unsigned char *mac);
  static void begin(unsigned char *mac, IPAddress ip);
  static IPAddress localIP();
  static void maintain();
};

class EthernetClient {
public:
  int connect(const char *host, unsigned int port);
  unsigned long write(unsigned char data);
  int available();
  int read();
  void stop();
  unsigned char connected();
};

#endif
